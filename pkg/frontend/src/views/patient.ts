// Patient statuses with a renewal button per prescription. The button's
// enabled state mirrors the server rule, so a disabled renewal explains
// itself without a round trip.

import { renewalState, statusBadge } from "../actions.js";
import { esc } from "../dom.js";
import type { RxRow } from "../types.js";

export function renderStatusRow(row: RxRow): string {
  const renewal = renewalState(row);
  const button = renewal.enabled
    ? `<button class="renew" data-rx="${esc(row.id)}">Request renewal</button>`
    : `<button class="renew" data-rx="${esc(row.id)}" disabled ` +
      `title="${esc(renewal.reason)}">Renewal unavailable (${esc(renewal.reason)})</button>`;
  const refills = Math.min(...row.medicines.map((m) => m.refills_remaining));
  return `
  <li class="rx" data-rx="${esc(row.id)}">
    <code>${esc(row.id)}</code>
    <span class="badge badge-${esc(row.status.toLowerCase())}">${esc(statusBadge(row.status))}</span>
    <span class="refills">${esc(refills)} refill(s) left</span>
    ${button}
  </li>`;
}

export function renderPatientView(rows: RxRow[]): string {
  if (rows.length === 0) {
    return `<section class="card"><h2>My prescriptions</h2>
      <p class="empty">Nothing on file at this pharmacy.</p></section>`;
  }
  return `
  <section class="card">
    <h2>My prescriptions</h2>
    <ul class="statuses">${rows.map(renderStatusRow).join("")}</ul>
  </section>`;
}

export function renderRenewalError(code: string, message: string): string {
  return `<div class="toast error" data-error="${esc(code)}">Renewal denied (${esc(
    code,
  )}): ${esc(message)}</div>`;
}
