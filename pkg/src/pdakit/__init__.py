"""Placement delivery arrays for centralized coded caching.

Data model and checker (core), text interchange (textio), parametric
families (constructions), an end-to-end placement/delivery/decoding
simulator (simulate), and rate/packet-count analysis (analysis).  The
verifier's pair scan runs on a compiled kernel when built, with a numpy
fallback selected at import; kernel_backend() reports which one is active.
"""

from ._kernels import backend_name as kernel_backend
from .analysis import (ComparisonResult, MemoryShareSpec, SchemeMetrics,
                       SchemeRow, compare_general, compare_special,
                       enumerate_schemes, estimate_m_range, memory_share)
from .constructions import (ConstructionParams, Family, ParamDomainError,
                            SizeCapError, construct, construct_ext_general,
                            construct_ext_special, construct_general,
                            construct_mn, construct_special, mn_params,
                            standard_sweep, theorem_params)
from .core import (STAR, PdaArray, PdaError, PdaParams, VerificationReport,
                   Violation, canonicalize, equivalent, params_of, verify_pda)
from .simulate import (CacheState, DecodeReport, PacketStore, Transmission,
                       TransmissionLog, decode_and_verify, deliver, place,
                       run_simulation)
from .textio import PdaFormatError, PdaHeader, emit, load, parse, save

__version__ = "0.1.0"

__all__ = [
    "STAR", "PdaArray", "PdaError", "PdaParams", "VerificationReport",
    "Violation", "canonicalize", "equivalent", "params_of", "verify_pda",
    "PdaFormatError", "PdaHeader", "emit", "load", "parse", "save",
    "ConstructionParams", "Family", "ParamDomainError", "SizeCapError",
    "construct", "construct_general", "construct_special",
    "construct_ext_general", "construct_ext_special", "construct_mn",
    "mn_params", "standard_sweep", "theorem_params",
    "CacheState", "DecodeReport", "PacketStore", "Transmission",
    "TransmissionLog", "decode_and_verify", "deliver", "place",
    "run_simulation",
    "ComparisonResult", "MemoryShareSpec", "SchemeMetrics", "SchemeRow",
    "compare_general", "compare_special", "enumerate_schemes",
    "estimate_m_range", "memory_share",
    "kernel_backend", "__version__",
]
