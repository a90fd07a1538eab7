"""QC-LDPC codec: direct encoding from the model matrix and layered
single-scan min-sum decoding for the IEEE 802.11 and 802.16 code families,
with a BPSK/AWGN Monte-Carlo harness."""

from .chansim import (ChannelConfig, ThroughputReport, WaterfallPoint,
                      WaterfallTable, awgn, bpsk_modulate, ebn0_to_sigma2,
                      llr_from_samples, run_throughput_bench, run_waterfall)
from .codebook import (ModelMatrix, Rate, SparseParityCheck, Standard,
                       StructureReport, expand, export_alist,
                       format_model_matrix_text, get_model_matrix,
                       parse_model_matrix_text, parse_rate, parse_standard,
                       scale_model_matrix, supported_codes, validate_structure)
from .decoder import (PROFILES, Arithmetic, ConfigProfile, DecodeResult,
                      DecoderConfig, DecoderState, LlrBlock, decode,
                      decode_block, init_state, quantize_llr, read_llr_file,
                      state_size_report, syndrome_check, tier_update,
                      write_llr_file)
from .encoder import (EncoderPlan, EncoderVariant, cyclic_shift_inverse,
                      cyclic_shift_packed, encode, encode_array,
                      encode_packed, find_y, make_plan, pack_bits,
                      unpack_bits)
from .errors import (ArithmeticMismatch, BadZ, CodecError, CorruptFile,
                     DivByZeroSigma, MalformedHb, SizeMismatch,
                     UnsupportedCode, UnsupportedZ)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticMismatch", "Arithmetic", "BadZ", "ChannelConfig", "CodecError",
    "ConfigProfile", "CorruptFile", "DecodeResult", "DecoderConfig",
    "DecoderState", "DivByZeroSigma", "EncoderPlan", "EncoderVariant",
    "LlrBlock", "MalformedHb", "ModelMatrix", "PROFILES", "Rate",
    "SizeMismatch", "SparseParityCheck", "Standard", "StructureReport",
    "ThroughputReport", "UnsupportedCode", "UnsupportedZ", "WaterfallPoint",
    "WaterfallTable", "awgn", "bpsk_modulate", "cyclic_shift_inverse",
    "cyclic_shift_packed", "decode", "decode_block", "ebn0_to_sigma2",
    "encode", "encode_array", "encode_packed", "expand", "export_alist",
    "find_y", "format_model_matrix_text", "get_model_matrix", "init_state",
    "llr_from_samples", "make_plan", "pack_bits", "parse_model_matrix_text",
    "parse_rate", "parse_standard", "quantize_llr", "read_llr_file",
    "run_throughput_bench", "run_waterfall", "scale_model_matrix",
    "state_size_report", "supported_codes", "syndrome_check", "tier_update",
    "unpack_bits", "validate_structure", "write_llr_file",
]
