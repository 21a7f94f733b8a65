// Thin fetch clients for the two services. Every non-2xx response with a
// JSON body becomes an ApiError carrying the server's stable error_code,
// so views can branch on it without string matching.

import type { ErrorBody, PrescriptionForm, RxRow, SubmissionReceipt } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly errorCode: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(
  base: string,
  path: string,
  init: RequestInit = {},
  token?: string,
): Promise<T> {
  const headers: Record<string, string> = {
    ...(init.body ? { "Content-Type": "application/json" } : {}),
    ...(token ? { Authorization: `Bearer ${token}` } : {}),
  };
  const resp = await fetch(base + path, { ...init, headers });
  if (!resp.ok) {
    let body: ErrorBody | null = null;
    try {
      body = (await resp.json()) as ErrorBody;
    } catch {
      // non-JSON error page; fall through with what we have
    }
    throw new ApiError(resp.status, body?.error_code ?? "Http", body?.message ?? resp.statusText);
  }
  return (await resp.json()) as T;
}

export class ClinicApi {
  constructor(readonly base: string = "") {}

  async login(principalId: string, secret: string): Promise<string> {
    const body = await request<{ token: string }>(this.base, "/api/login", {
      method: "POST",
      body: JSON.stringify({ principal_id: principalId, secret }),
    });
    return body.token;
  }

  submitPrescription(token: string, form: PrescriptionForm): Promise<SubmissionReceipt> {
    return request(this.base, "/api/prescriptions", {
      method: "POST",
      body: JSON.stringify(form),
    }, token);
  }

  nearestPharmacy(token: string, lat: number, lon: number): Promise<{ pharmacy_id: string; name: string }> {
    return request(this.base, `/api/pharmacies/nearest?lat=${lat}&lon=${lon}`, {}, token);
  }
}

export class PharmacyApi {
  constructor(readonly base: string) {}

  async login(principalId: string, secret: string): Promise<string> {
    const body = await request<{ token: string }>(this.base, "/api/login", {
      method: "POST",
      body: JSON.stringify({ principal_id: principalId, secret }),
    });
    return body.token;
  }

  outstanding(token: string): Promise<RxRow[]> {
    return request(this.base, "/api/prescriptions?status=outstanding", {}, token);
  }

  setStatus(token: string, prescriptionId: string, event: string): Promise<RxRow> {
    return request(this.base, `/api/prescriptions/${encodeURIComponent(prescriptionId)}/status`, {
      method: "POST",
      body: JSON.stringify({ event }),
    }, token);
  }

  patientPrescriptions(token: string, patientId: string): Promise<RxRow[]> {
    return request(
      this.base,
      `/api/patients/${encodeURIComponent(patientId)}/prescriptions`,
      {},
      token,
    );
  }

  requestRenewal(token: string, prescriptionId: string): Promise<RxRow> {
    return request(this.base, `/api/prescriptions/${encodeURIComponent(prescriptionId)}/renewal`, {
      method: "POST",
    }, token);
  }
}
