// Prescribe form and receipt card. Render functions return HTML strings;
// the app wires the handlers.

import { esc } from "../dom.js";
import type { SubmissionReceipt } from "../types.js";

export function renderPrescribeForm(errors: string[] = []): string {
  const errorBox = errors.length
    ? `<ul class="errors">${errors.map((e) => `<li>${esc(e)}</li>`).join("")}</ul>`
    : "";
  return `
  <section class="card">
    <h2>New prescription</h2>
    ${errorBox}
    <form id="prescribe-form">
      <label>Patient id
        <input name="patient_id" id="rx-patient" placeholder="pat-patient" />
      </label>
      <label>Pharmacy id
        <input name="pharmacy_id" id="rx-pharmacy" placeholder="PH-CENTRAL" />
      </label>
      <label>Medicines, one per line: name, dosage, quantity, refills
        <textarea id="rx-medicines" rows="4" placeholder="amoxicillin, 500mg, 20, 1"></textarea>
      </label>
      <button type="submit" id="rx-submit">Send to pharmacy</button>
    </form>
  </section>`;
}

export function renderReceipt(receipt: SubmissionReceipt | null): string {
  if (!receipt) return "";
  return `
  <section class="card receipt" data-rx="${esc(receipt.prescription_id)}">
    <h3>Accepted by ${esc(receipt.pharmacy_id)}</h3>
    <p>Prescription <code>${esc(receipt.prescription_id)}</code> is
    <strong>${esc(receipt.status)}</strong>.</p>
    <p class="latency">Round trip ${esc(receipt.latency_s.toFixed(4))} s over the air link.</p>
  </section>`;
}

export function renderSubmitError(code: string, message: string): string {
  return `
  <section class="card error" data-error="${esc(code)}">
    <h3>Submission failed: ${esc(code)}</h3>
    <p>${esc(message)}</p>
    <p>The form is unchanged; adjust and resend.</p>
  </section>`;
}
