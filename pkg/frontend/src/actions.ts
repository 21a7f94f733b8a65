// Pure decisions behind the buttons. Everything here is derived from
// server rows, so the console can never offer an action the API would
// reject as an illegal transition.

import type { MedicineDoc, PrescriptionForm, RxRow } from "./types.js";
import { TERMINAL_STATUSES } from "./types.js";

/** Buttons for a queue row: exactly the server-stated legal events. */
export function actionButtons(row: RxRow): string[] {
  return [...row.legal_events];
}

const EVENT_LABELS: Record<string, string> = {
  Receive: "Receive",
  StartFill: "Start filling",
  MarkReady: "Mark ready",
  PickUp: "Picked up",
  Deliver: "Delivered",
};

export function eventLabel(event: string): string {
  return EVENT_LABELS[event] ?? event;
}

/** Patient-facing badge text for a status. */
export function statusBadge(status: string): string {
  switch (status) {
    case "Ready":
      return "ready for pick up";
    case "PickedUp":
      return "picked up";
    case "Delivered":
      return "delivered";
    case "Filling":
      return "being filled";
    default:
      return "at the pharmacy";
  }
}

export interface RenewalState {
  enabled: boolean;
  reason: string;
}

/**
 * A renewal can be requested once the prescription is dispensed and every
 * medicine still has refills. Mirrors the server rule so the disabled
 * button can say why before a request is ever made.
 */
export function renewalState(row: RxRow): RenewalState {
  if (!TERMINAL_STATUSES.has(row.status)) {
    return { enabled: false, reason: "not dispensed yet" };
  }
  if (row.medicines.some((m) => m.refills_remaining < 1)) {
    return { enabled: false, reason: "no refills left" };
  }
  return { enabled: true, reason: "" };
}

/**
 * Parse the prescribe form's medicines textarea: one medicine per line,
 * comma separated as `name, dosage, quantity[, refills]`.
 */
export function parseMedicineLines(text: string): { medicines: MedicineDoc[]; errors: string[] } {
  const medicines: MedicineDoc[] = [];
  const errors: string[] = [];
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  for (const line of lines) {
    const parts = line.split(",").map((p) => p.trim());
    const [name, dosage = "", quantityRaw = "1", refillsRaw = "0"] = parts;
    if (!name) {
      errors.push(`medicine line needs a name: "${line}"`);
      continue;
    }
    const quantity = Number(quantityRaw);
    const refills = Number(refillsRaw);
    if (!Number.isInteger(quantity) || quantity < 1) {
      errors.push(`quantity must be a positive integer: "${line}"`);
      continue;
    }
    if (!Number.isInteger(refills) || refills < 0) {
      errors.push(`refills must be a non-negative integer: "${line}"`);
      continue;
    }
    medicines.push({ name, dosage, quantity, refills_remaining: refills });
  }
  return { medicines, errors };
}

/** Client-side gate for the prescribe form; empty medicines never leave the browser. */
export function validatePrescriptionForm(form: PrescriptionForm): string[] {
  const errors: string[] = [];
  if (!form.patient_id.trim()) errors.push("patient id is required");
  if (!form.pharmacy_id.trim()) errors.push("pharmacy id is required");
  if (form.medicines.length === 0) errors.push("at least one medicine is required");
  return errors;
}
