// Console entry point: login, tabs, a 2 s poll per live view, and event
// delegation for the row buttons. At most one mutation is in flight at a
// time; every mutation invalidates the caches so the next poll repaints
// from fresh server rows.

import { ApiError, ClinicApi, PharmacyApi } from "./api.js";
import { parseMedicineLines, validatePrescriptionForm } from "./actions.js";
import { byId, esc } from "./dom.js";
import { ViewState, type ViewName } from "./state.js";
import { renderPrescribeForm, renderReceipt, renderSubmitError } from "./views/physician.js";
import { renderConflictToast, renderQueue } from "./views/pharmacist.js";
import { renderPatientView, renderRenewalError } from "./views/patient.js";

const POLL_MS = 2000;

const state = new ViewState();
let clinic = new ClinicApi("");
let pharmacy = new PharmacyApi(defaultPharmacyBase());
let toast = "";

function defaultPharmacyBase(): string {
  if (typeof location === "undefined") return "http://127.0.0.1:8601";
  const host = location.hostname || "127.0.0.1";
  return `${location.protocol}//${host}:8601`;
}

function setToast(html: string): void {
  toast = html;
  setTimeout(() => {
    toast = "";
    paint();
  }, 4000);
}

// --- painting ---------------------------------------------------------

function paint(): void {
  byId("toast-area").innerHTML = toast;
  const view = state.activeView;
  for (const name of ["physician", "pharmacist", "patient"] as ViewName[]) {
    byId(`tab-${name}`).classList.toggle("active", name === view);
  }
  if (!state.hasSession(view)) {
    byId("view").innerHTML = `<section class="card"><p>Sign in above to use the ${esc(
      view,
    )} view.</p></section>`;
    return;
  }
  if (view === "physician") {
    byId("view").innerHTML = renderPrescribeForm() + renderReceipt(state.lastReceipt);
    return;
  }
  if (view === "pharmacist") {
    const rows = state.cachedQueue();
    byId("view").innerHTML = rows
      ? renderQueue(rows)
      : `<section class="card"><p>Loading queue...</p></section>`;
    return;
  }
  const rows = state.cachedPatient();
  byId("view").innerHTML = rows
    ? renderPatientView(rows)
    : `<section class="card"><p>Loading prescriptions...</p></section>`;
}

// --- polling ----------------------------------------------------------

async function refreshOnce(): Promise<void> {
  const view = state.activeView;
  if (!state.hasSession(view)) return;
  // the prescribe form is not poll-driven; repainting it would eat input
  if (view === "physician") return;
  try {
    if (view === "pharmacist") {
      state.cacheQueue(await pharmacy.outstanding(state.pharmacyToken), Date.now());
    } else if (view === "patient") {
      state.cachePatient(
        await pharmacy.patientPrescriptions(state.pharmacyToken, state.principalId),
        Date.now(),
      );
    }
    paint();
  } catch (err) {
    if (err instanceof ApiError && err.status === 401) {
      state.logout();
      paint();
    }
  }
}

function startPolling(): void {
  const epoch = (state.pollEpoch += 1);
  const tick = async () => {
    if (epoch !== state.pollEpoch) return; // navigated away; this loop dies
    await refreshOnce();
    if (epoch === state.pollEpoch) setTimeout(tick, POLL_MS);
  };
  void tick();
}

function navigate(view: ViewName): void {
  state.navigate(view);
  paint();
  startPolling();
}

// --- actions ----------------------------------------------------------

async function submitPrescription(): Promise<void> {
  const patientId = byId<HTMLInputElement>("rx-patient").value;
  const pharmacyId = byId<HTMLInputElement>("rx-pharmacy").value;
  const medicinesText = byId<HTMLTextAreaElement>("rx-medicines").value;
  const { medicines, errors: parseErrors } = parseMedicineLines(medicinesText);
  const form = { patient_id: patientId, pharmacy_id: pharmacyId, medicines };
  const errors = [...parseErrors, ...validatePrescriptionForm(form)];
  if (errors.length) {
    byId("view").innerHTML = renderPrescribeForm(errors) + renderReceipt(state.lastReceipt);
    byId<HTMLInputElement>("rx-patient").value = patientId;
    byId<HTMLInputElement>("rx-pharmacy").value = pharmacyId;
    byId<HTMLTextAreaElement>("rx-medicines").value = medicinesText;
    return;
  }
  if (state.mutationInFlight) return;
  state.mutationInFlight = true;
  try {
    state.lastReceipt = await clinic.submitPrescription(state.clinicToken, form);
    state.invalidate();
    paint();
  } catch (err) {
    const code = err instanceof ApiError ? err.errorCode : "Network";
    const message = err instanceof Error ? err.message : String(err);
    // keep the operator's input so a transient link failure is a resend
    byId("view").innerHTML =
      renderPrescribeForm() + renderSubmitError(code, message) + renderReceipt(state.lastReceipt);
    byId<HTMLInputElement>("rx-patient").value = patientId;
    byId<HTMLInputElement>("rx-pharmacy").value = pharmacyId;
    byId<HTMLTextAreaElement>("rx-medicines").value = medicinesText;
  } finally {
    state.mutationInFlight = false;
  }
}

async function clickStatusAction(rxId: string, event: string): Promise<void> {
  if (state.mutationInFlight) return;
  state.mutationInFlight = true;
  try {
    await pharmacy.setStatus(state.pharmacyToken, rxId, event);
    state.invalidate();
    await refreshOnce();
  } catch (err) {
    if (err instanceof ApiError && (err.status === 409 || err.status === 404)) {
      setToast(renderConflictToast(rxId));
      state.invalidate();
      await refreshOnce();
    }
  } finally {
    state.mutationInFlight = false;
  }
}

async function clickRenewal(rxId: string): Promise<void> {
  if (state.mutationInFlight) return;
  state.mutationInFlight = true;
  try {
    await pharmacy.requestRenewal(state.pharmacyToken, rxId);
    state.invalidate();
    await refreshOnce();
  } catch (err) {
    if (err instanceof ApiError) {
      setToast(renderRenewalError(err.errorCode, err.message));
    }
    paint();
  } finally {
    state.mutationInFlight = false;
  }
}

// --- wiring -----------------------------------------------------------

async function signIn(): Promise<void> {
  const principalId = byId<HTMLInputElement>("login-id").value.trim();
  const secret = byId<HTMLInputElement>("login-secret").value;
  const pharmacyBase = byId<HTMLInputElement>("login-pharmacy-url").value.trim();
  pharmacy = new PharmacyApi(pharmacyBase || defaultPharmacyBase());
  state.logout(); // a new identity never sees the old cache
  state.principalId = principalId;
  const problems: string[] = [];
  try {
    state.clinicToken = await clinic.login(principalId, secret);
  } catch (err) {
    problems.push(`clinic: ${err instanceof Error ? err.message : err}`);
  }
  try {
    state.pharmacyToken = await pharmacy.login(principalId, secret);
  } catch (err) {
    problems.push(`pharmacy: ${err instanceof Error ? err.message : err}`);
  }
  byId("login-status").textContent =
    state.clinicToken || state.pharmacyToken
      ? `Signed in as ${principalId}`
      : `Sign-in failed. ${problems.join("; ")}`;
  paint();
  startPolling();
}

export function boot(): void {
  byId<HTMLInputElement>("login-pharmacy-url").value = defaultPharmacyBase();
  byId("login-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    void signIn();
  });
  for (const name of ["physician", "pharmacist", "patient"] as ViewName[]) {
    byId(`tab-${name}`).addEventListener("click", () => navigate(name));
  }
  byId("view").addEventListener("submit", (ev) => {
    const target = ev.target as HTMLElement;
    if (target.id === "prescribe-form") {
      ev.preventDefault();
      void submitPrescription();
    }
  });
  byId("view").addEventListener("click", (ev) => {
    const el = ev.target as HTMLElement;
    if (el.matches("button.status-action")) {
      void clickStatusAction(el.dataset.rx ?? "", el.dataset.event ?? "");
    } else if (el.matches("button.renew") && !el.hasAttribute("disabled")) {
      void clickRenewal(el.dataset.rx ?? "");
    }
  });
  paint();
}

if (typeof document !== "undefined" && document.getElementById("view")) {
  boot();
}
