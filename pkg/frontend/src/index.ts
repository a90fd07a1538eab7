export {
  Codec,
  codec,
  decode,
  encode,
  waterfall,
  quantize,
} from "./codec.js";
export type {
  CodecOptions,
  StandardName,
  WaterfallOptions,
  WaterfallTable,
} from "./codec.js";
export {
  parseDecodeRecords,
  parseWaterfallCsv,
  readLlrFile,
  rint,
  unpackBits,
  WATERFALL_CSV_HEADER,
  writeLlrFile,
} from "./formats.js";
export type {
  Arithmetic,
  DecodeRecord,
  LlrBlock,
  WaterfallPoint,
} from "./formats.js";
export {
  CodecError,
  FormatError,
  UnsupportedCodeError,
  UsageError,
} from "./errors.js";
export { cliBinary, runCli } from "./run.js";
