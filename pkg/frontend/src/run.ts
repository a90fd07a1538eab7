import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { CodecError, errorForExit } from "./errors.js";

/** Path of the codec executable; override with QCLDPC_BIN. */
export function cliBinary(): string {
  return process.env.QCLDPC_BIN ?? "qcldpc";
}

export interface CliResult {
  stdout: string;
  stderr: string;
}

/** Run one CLI command, mapping nonzero exits to typed errors. */
export function runCli(args: string[]): CliResult {
  const proc = spawnSync(cliBinary(), args, {
    encoding: "utf8",
    maxBuffer: 1 << 26,
  });
  if (proc.error) {
    throw new CodecError(`cannot run ${cliBinary()}: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    const detail = proc.stderr.trim() || `exit ${proc.status}`;
    throw errorForExit(proc.status ?? 1, detail);
  }
  return { stdout: proc.stdout, stderr: proc.stderr };
}

/** Make a scratch directory for the duration of one call. */
export function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "qcldpc-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
