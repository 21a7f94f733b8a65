// The views are pure string renderers, so these tests assert on markup
// without any DOM.

import { describe, expect, it } from "vitest";

import { esc } from "../src/dom.js";
import type { RxRow } from "../src/types.js";
import { renderPrescribeForm, renderReceipt, renderSubmitError } from "../src/views/physician.js";
import { renderConflictToast, renderQueue, renderQueueRow } from "../src/views/pharmacist.js";
import { renderPatientView, renderRenewalError, renderStatusRow } from "../src/views/patient.js";

function row(overrides: Partial<RxRow> = {}): RxRow {
  return {
    id: "rx-1",
    patient_id: "pat-patient",
    creator_physician_id: "dr-alice",
    pharmacy_id: "PH-CENTRAL",
    medicines: [{ name: "amoxicillin", dosage: "500mg", quantity: 20, refills_remaining: 1 }],
    status: "Received",
    created_at: "2026-01-01T00:00:00+00:00",
    updated_at: "2026-01-01T00:00:00+00:00",
    legal_events: ["StartFill"],
    ...overrides,
  };
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("esc", () => {
  it("neutralizes markup and quotes", () => {
    expect(esc(`<img src=x onerror="alert('x')">`)).toBe(
      "&lt;img src=x onerror=&quot;alert(&#39;x&#39;)&quot;&gt;",
    );
  });
});

describe("queue rendering", () => {
  it("shows one action button per legal event, labeled for humans", () => {
    const html = renderQueueRow(row());
    expect(count(html, 'class="status-action"')).toBe(1);
    expect(html).toContain('data-event="StartFill"');
    expect(html).toContain("Start filling");
    expect(html).toContain('data-rx="rx-1"');
  });

  it("renders no buttons for a terminal row", () => {
    const html = renderQueueRow(row({ status: "PickedUp", legal_events: [] }));
    expect(html).not.toContain("status-action");
  });

  it("summarizes the medicines", () => {
    expect(renderQueueRow(row())).toContain("amoxicillin 500mg x20");
  });

  it("escapes hostile ids instead of injecting them", () => {
    const html = renderQueueRow(row({ id: `<script>alert(1)</script>` }));
    expect(html).not.toContain("<script");
    expect(html).toContain("&lt;script&gt;");
  });

  it("says so when the queue is empty", () => {
    expect(renderQueue([])).toContain("Queue is empty.");
  });

  it("renders a table with one row per prescription", () => {
    const html = renderQueue([row(), row({ id: "rx-2" })]);
    expect(count(html, "<tr data-rx=")).toBe(2);
  });

  it("names the prescription in the conflict toast", () => {
    const html = renderConflictToast("rx-9");
    expect(html).toContain("rx-9");
    expect(html).toContain("changed elsewhere");
  });
});

describe("patient rendering", () => {
  it("shows the ready badge once the pharmacist marks it Ready", () => {
    const html = renderStatusRow(row({ status: "Ready", legal_events: ["PickUp", "Deliver"] }));
    expect(html).toContain("ready for pick up");
    expect(html).toContain("badge-ready");
  });

  it("disables renewal before the prescription is dispensed", () => {
    const html = renderStatusRow(row({ status: "Ready", legal_events: ["PickUp", "Deliver"] }));
    expect(html).toContain("disabled");
    expect(html).toContain("not dispensed yet");
  });

  it("disables renewal at zero refills and says why", () => {
    const html = renderStatusRow(
      row({
        status: "PickedUp",
        legal_events: [],
        medicines: [{ name: "amoxicillin", dosage: "500mg", quantity: 20, refills_remaining: 0 }],
      }),
    );
    expect(html).toContain("disabled");
    expect(html).toContain("no refills left");
    expect(html).toContain("0 refill(s) left");
  });

  it("enables renewal on a dispensed prescription with refills", () => {
    const html = renderStatusRow(row({ status: "Delivered", legal_events: [] }));
    expect(html).toContain(">Request renewal</button>");
    expect(html).not.toContain("disabled");
  });

  it("handles an empty list", () => {
    expect(renderPatientView([])).toContain("Nothing on file at this pharmacy.");
  });

  it("carries the server's error code into the renewal toast", () => {
    const html = renderRenewalError("NoRefills", "renewal denied: NoRefills");
    expect(html).toContain('data-error="NoRefills"');
    expect(html).toContain("Renewal denied (NoRefills)");
  });
});

describe("physician rendering", () => {
  it("renders the prescribe form with its fields", () => {
    const html = renderPrescribeForm();
    for (const id of ["rx-patient", "rx-pharmacy", "rx-medicines", "rx-submit"]) {
      expect(html).toContain(`id="${id}"`);
    }
    expect(html).not.toContain("errors");
  });

  it("lists validation errors above the form", () => {
    const html = renderPrescribeForm(["at least one medicine is required"]);
    expect(html).toContain('<ul class="errors">');
    expect(html).toContain("at least one medicine is required");
  });

  it("renders nothing without a receipt and the latency with one", () => {
    expect(renderReceipt(null)).toBe("");
    const html = renderReceipt({
      prescription_id: "rx-1",
      pharmacy_id: "PH-CENTRAL",
      submitted_at: 5.0,
      acked_at: 5.24,
      latency_s: 0.2400447,
      status: "Received",
    });
    expect(html).toContain("Accepted by PH-CENTRAL");
    expect(html).toContain("0.2400 s over the air link");
    expect(html).toContain("<strong>Received</strong>");
  });

  it("keeps the failed submission visible with its error code", () => {
    const html = renderSubmitError("TransferFailed", "retries exhausted");
    expect(html).toContain('data-error="TransferFailed"');
    expect(html).toContain("The form is unchanged");
  });
});
