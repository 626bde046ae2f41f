/**
 * Parser for the experiment harness result schema.
 *
 * The harness emits one row per (noise class, horizon/checkpoint T, iterate
 * kind) with the exact columns below; anything else is rejected with a
 * column diff so a schema drift is obvious immediately.
 */

export const REQUIRED_COLUMNS = [
  'noise_class',
  'theta_or_p',
  'T',
  'iterate_kind',
  'runs',
  'mean_err',
  'q',
  'quantile_err',
  'base_seed',
] as const;

export interface SummaryRow {
  noise_class: string;
  theta_or_p: number;
  T: number;
  iterate_kind: 'average' | 'last';
  runs: number;
  mean_err: number;
  q: number;
  quantile_err: number;
  base_seed: number;
}

export class SchemaError extends Error {}

export function parseCsv(text: string, source = '<csv>'): SummaryRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${source}: need a header and at least one row`);
  }
  const header = lines[0].split(',');
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  const unexpected = header.filter(
    (c) => !(REQUIRED_COLUMNS as readonly string[]).includes(c),
  );
  if (missing.length > 0 || unexpected.length > 0) {
    throw new SchemaError(
      `${source}: column mismatch` +
        (missing.length ? `; missing: ${missing.join(', ')}` : '') +
        (unexpected.length ? `; unexpected: ${unexpected.join(', ')}` : ''),
    );
  }
  const idx = new Map(header.map((c, i) => [c, i]));
  const rows: SummaryRow[] = [];
  for (let ln = 1; ln < lines.length; ln++) {
    const parts = lines[ln].split(',');
    if (parts.length !== header.length) {
      throw new SchemaError(
        `${source}:${ln + 1}: expected ${header.length} fields, got ${parts.length}`,
      );
    }
    const cell = (name: string) => parts[idx.get(name)!];
    const num = (name: string) => {
      const v = Number(cell(name));
      if (!Number.isFinite(v)) {
        throw new SchemaError(`${source}:${ln + 1}: ${name} is not a number`);
      }
      return v;
    };
    const kind = cell('iterate_kind');
    if (kind !== 'average' && kind !== 'last') {
      throw new SchemaError(
        `${source}:${ln + 1}: iterate_kind must be average|last, got ${kind}`,
      );
    }
    rows.push({
      noise_class: cell('noise_class'),
      theta_or_p: num('theta_or_p'),
      T: num('T'),
      iterate_kind: kind,
      runs: num('runs'),
      mean_err: num('mean_err'),
      q: num('q'),
      quantile_err: num('quantile_err'),
      base_seed: num('base_seed'),
    });
  }
  return rows;
}

/** Stable identity of one plotted line family (color key). */
export function seriesKey(row: SummaryRow): string {
  return `${row.noise_class}:${row.theta_or_p}`;
}

/** Distinct horizons in a file; > 12 means a trajectory (anytime) file. */
export function inferExperimentKind(rows: SummaryRow[]): 'fixed-horizon' | 'anytime' {
  const ts = new Set(rows.map((r) => r.T));
  return ts.size > 12 ? 'anytime' : 'fixed-horizon';
}
