// Outstanding queue: one row per prescription, buttons straight from the
// server's legal_events so an illegal transition cannot be clicked.

import { actionButtons, eventLabel } from "../actions.js";
import { esc } from "../dom.js";
import type { RxRow } from "../types.js";

function medicineSummary(row: RxRow): string {
  return row.medicines.map((m) => `${m.name} ${m.dosage} x${m.quantity}`).join("; ");
}

export function renderQueueRow(row: RxRow): string {
  const buttons = actionButtons(row)
    .map(
      (ev) =>
        `<button class="status-action" data-rx="${esc(row.id)}" data-event="${esc(ev)}">` +
        `${esc(eventLabel(ev))}</button>`,
    )
    .join(" ");
  return `
  <tr data-rx="${esc(row.id)}">
    <td><code>${esc(row.id)}</code></td>
    <td>${esc(row.patient_id)}</td>
    <td>${esc(medicineSummary(row))}</td>
    <td class="status">${esc(row.status)}</td>
    <td>${buttons}</td>
  </tr>`;
}

export function renderQueue(rows: RxRow[]): string {
  if (rows.length === 0) {
    return `<section class="card"><h2>Outstanding prescriptions</h2>
      <p class="empty">Queue is empty.</p></section>`;
  }
  return `
  <section class="card">
    <h2>Outstanding prescriptions</h2>
    <table class="queue">
      <thead><tr><th>id</th><th>patient</th><th>medicines</th><th>status</th><th></th></tr></thead>
      <tbody>${rows.map(renderQueueRow).join("")}</tbody>
    </table>
  </section>`;
}

export function renderConflictToast(rxId: string): string {
  return `<div class="toast" data-rx="${esc(rxId)}">Prescription ${esc(
    rxId,
  )} changed elsewhere; list refreshed.</div>`;
}
