/** Typed errors mirroring the CLI exit-code contract. */

export class CodecError extends Error {}

/** Exit code 3: the (standard, n, rate) triple names no embedded code. */
export class UnsupportedCodeError extends CodecError {}

/** Exit code 2: unreadable, truncated or mismatched file contents. */
export class FormatError extends CodecError {}

/** Exit code 1: bad flags or argument values. */
export class UsageError extends CodecError {}

export function errorForExit(status: number, detail: string): CodecError {
  switch (status) {
    case 3:
      return new UnsupportedCodeError(detail);
    case 2:
      return new FormatError(detail);
    default:
      return new UsageError(detail);
  }
}
