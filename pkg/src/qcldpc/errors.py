"""Exception types shared across the codec."""


class CodecError(Exception):
    """Base class for qcldpc errors."""


class UnsupportedCode(CodecError):
    """Requested (standard, N, rate) combination is not defined."""


class BadZ(CodecError):
    """Expansion factor outside the supported table."""


class UnsupportedZ(CodecError):
    """Operation needs a byte-aligned Z (packed encoder on Z % 8 != 0)."""


class MalformedHb(CodecError):
    """h_b column lacks the single-interior-entry structure."""


class SizeMismatch(CodecError):
    """Buffer length does not match the code dimensions."""


class ArithmeticMismatch(CodecError):
    """LLR arithmetic does not match the decoder configuration."""


class DivByZeroSigma(CodecError):
    """Channel variance of zero cannot produce LLRs."""


class CorruptFile(CodecError):
    """File contents do not match the declared format."""
