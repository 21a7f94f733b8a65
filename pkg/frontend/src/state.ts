// Console state: one session per service, one active view, and per-view
// caches that die on any mutation. Nothing survives a logout.

import type { RxRow, SubmissionReceipt } from "./types.js";

export type ViewName = "physician" | "pharmacist" | "patient";

export interface CachedList<T> {
  rows: T[];
  fetchedAt: number;
}

export class ViewState {
  clinicToken = "";
  pharmacyToken = "";
  principalId = "";
  activeView: ViewName = "physician";

  private queueCache: CachedList<RxRow> | null = null;
  private patientCache: CachedList<RxRow> | null = null;
  lastReceipt: SubmissionReceipt | null = null;

  /** bumped on navigation and logout so stale poll loops stop themselves */
  pollEpoch = 0;
  mutationInFlight = false;

  hasSession(view: ViewName): boolean {
    return view === "physician" ? this.clinicToken !== "" : this.pharmacyToken !== "";
  }

  navigate(view: ViewName): void {
    this.activeView = view;
    this.pollEpoch += 1;
  }

  cacheQueue(rows: RxRow[], now: number): void {
    this.queueCache = { rows, fetchedAt: now };
  }

  cachedQueue(): RxRow[] | null {
    return this.queueCache ? this.queueCache.rows : null;
  }

  cachePatient(rows: RxRow[], now: number): void {
    this.patientCache = { rows, fetchedAt: now };
  }

  cachedPatient(): RxRow[] | null {
    return this.patientCache ? this.patientCache.rows : null;
  }

  /** every mutating action lands here; the next render refetches */
  invalidate(): void {
    this.queueCache = null;
    this.patientCache = null;
  }

  logout(): void {
    this.clinicToken = "";
    this.pharmacyToken = "";
    this.principalId = "";
    this.lastReceipt = null;
    this.invalidate();
    this.pollEpoch += 1;
  }
}
