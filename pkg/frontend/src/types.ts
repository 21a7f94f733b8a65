// Wire shapes of the clinic and pharmacy HTTP APIs, as the server emits
// them. The console adds nothing of its own to these.

export interface MedicineDoc {
  name: string;
  dosage: string;
  quantity: number;
  refills_remaining: number;
}

export type RxStatus =
  | "Submitted"
  | "Received"
  | "Filling"
  | "Ready"
  | "PickedUp"
  | "Delivered";

export interface RxRow {
  id: string;
  patient_id: string;
  creator_physician_id: string;
  pharmacy_id: string;
  medicines: MedicineDoc[];
  status: RxStatus;
  created_at: string;
  updated_at: string;
  parent_id?: string;
  /** events the server will accept right now; buttons come from this */
  legal_events: string[];
}

export interface SubmissionReceipt {
  prescription_id: string;
  pharmacy_id: string;
  submitted_at: number;
  acked_at: number;
  latency_s: number;
  status: string;
}

export interface ErrorBody {
  error_code: string;
  message: string;
}

export interface PrescriptionForm {
  patient_id: string;
  pharmacy_id: string;
  medicines: MedicineDoc[];
}

export const TERMINAL_STATUSES: ReadonlySet<string> = new Set(["PickedUp", "Delivered"]);
