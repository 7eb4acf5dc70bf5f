"""Reference values for heavy vector mesons.

Embedded copies of the published comparison tables this package targets:
experimental masses ("ex"), model mass estimates ("th"), decay constants
with their quoted ±10%-scan uncertainties, and decay-constant ratios
(including vector-to-pseudoscalar ratios, whose pseudoscalar inputs come
from an external calculation).  All masses and decay constants are in
MeV; ratios are dimensionless.

The module is pure data plus a checksum helper so tests can pin the
values against a reviewed copy on disk.
"""

from __future__ import annotations

import hashlib
import json

__all__ = [
    "MASSES_TH",
    "MASSES_EX",
    "DECAY_CONSTANTS",
    "DECAY_RATIOS",
    "VECTOR_TO_PSEUDOSCALAR_RATIOS",
    "QUARKONIUM_LABELS",
    "as_dict",
    "checksum",
]

# State ordering for the equal-flavor towers.
QUARKONIUM_LABELS = ("1S", "2S", "1D", "3S", "2D", "4S", "3D", "5S")

# Model mass estimates (MeV).
MASSES_TH = {
    "B*_c": {"1S": 6336.9, "2S": 6918.5},
    "B*_s": {"1S": 5416.6, "2S": 5957.6},
    "B*_d": {"1S": 5326.2, "2S": 5842.3},
    "B*_u": {"1S": 5322.9, "2S": 5837.7},
    "D*_s": {"1S": 2112.0, "2S": 2673.0},
    "D*_d": {"1S": 2010.2, "2S": 2545.9},
    "D*_u": {"1S": 2006.5, "2S": 2540.8},
    "ccbar": {
        "1S": 3096.8,
        "2S": 3690.9,
        "1D": 3759.8,
        "3S": 4065.2,
        "2D": 4108.2,
        "4S": 4344.2,
        "3D": 4371.6,
        "5S": 4567.2,
    },
    "bbbar": {
        "1S": 9460.3,
        "2S": 10029.0,
        "1D": 10130.0,
        "3S": 10379.0,
        "2D": 10438.0,
        "4S": 10648.0,
        "3D": 10690.0,
        "5S": 10868.0,
    },
}

# Experimental masses (MeV); entries absent where unmeasured.
MASSES_EX = {
    "B*_s": {"1S": 5416.6},
    "B*_d": {"1S": 5325.0},
    "B*_u": {"1S": 5325.0},
    "D*_s": {"1S": 2112.1},
    "D*_d": {"1S": 2010.0},
    "D*_u": {"1S": 2006.7},
    "ccbar": {
        "1S": 3096.916,
        "2S": 3686.093,
        "1D": 3770.0,
        "3S": 4040.0,
        "2D": 4159.0,
        "4S": 4415.0,
    },
    "bbbar": {
        "1S": 9460.30,
        "2S": 10023.26,
        "3S": 10355.2,
        "4S": 10580.0,
        "5S": 10865.0,
    },
}

# Vector decay constants F_V with quoted uncertainties, (central, unc) MeV.
DECAY_CONSTANTS = {
    "B*_c": {"1S": (418.0, 24.0), "2S": (331.0, 21.0)},
    "B*_s": {"1S": (272.0, 20.0), "2S": (246.0, 13.0)},
    "B*_d": {"1S": (239.0, 18.0), "2S": (222.0, 15.0)},
    "B*_u": {"1S": (238.0, 18.0), "2S": (221.0, 14.0)},
    "D*_s": {"1S": (375.0, 24.0), "2S": (312.0, 17.0)},
    "D*_d": {"1S": (341.0, 23.0), "2S": (290.0, 16.0)},
    "D*_u": {"1S": (339.0, 22.0), "2S": (289.0, 16.0)},
    "ccbar": {
        "1S": (459.0, 28.0),
        "2S": (364.0, 24.0),
        "1D": (243.0, 17.0),
        "3S": (319.0, 22.0),
        "2D": (157.0, 11.0),
        "4S": (288.0, 18.0),
        "3D": (174.0, 12.0),
        "5S": (265.0, 16.0),
    },
    "bbbar": {
        "1S": (498.0, 20.0),
        "2S": (366.0, 27.0),
        "1D": (261.0, 21.0),
        "3S": (304.0, 27.0),
        "2D": (155.0, 11.0),
        "4S": (259.0, 22.0),
        "3D": (176.0, 10.0),
        "5S": (228.0, 16.0),
    },
}

# 1S strange-to-nonstrange ratios (the "F_D*" / "F_B*" denominators are
# the nonstrange channels, quoted as 340 +- 22 and 238 +- 18).
DECAY_RATIOS = {
    "F_B*_s/F_B*": (1.14, 0.08),
    "F_D*_s/F_D*": (1.10, 0.06),
}

# Vector-to-pseudoscalar decay-constant ratios (1S states); pseudoscalar
# constants are external inputs to this package.
VECTOR_TO_PSEUDOSCALAR_RATIOS = {
    "F_Upsilon/F_eta_b": (1.37, 0.18),
    "F_B*_c/F_B_c": (1.30, 0.24),
    "F_B*_s/F_B_s": (1.26, 0.28),
    "F_B*/F_B": (1.21, 0.27),
    "F_J/psi/F_eta_c": (1.57, 0.23),
    "F_D*_s/F_D_s": (1.51, 0.26),
    "F_D*/F_D": (1.48, 0.26),
}


def as_dict() -> dict:
    """All reference tables as one JSON-serializable dictionary."""
    return {
        "masses_th": MASSES_TH,
        "masses_ex": MASSES_EX,
        "decay_constants": {
            ch: {st: list(v) for st, v in states.items()}
            for ch, states in DECAY_CONSTANTS.items()
        },
        "decay_ratios": {k: list(v) for k, v in DECAY_RATIOS.items()},
        "vector_to_pseudoscalar_ratios": {
            k: list(v) for k, v in VECTOR_TO_PSEUDOSCALAR_RATIOS.items()
        },
    }


def checksum() -> str:
    """SHA-256 of the canonical JSON serialization of the tables."""
    blob = json.dumps(as_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
