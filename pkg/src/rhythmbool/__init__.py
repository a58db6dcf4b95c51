from .anf import AnfPoly, Basis
from .boolvec import BoolVec, Convention
from .config import Settings, load_settings
from .modular import ModulusContext, SignedIndex, ZnElement
from .rhythm import IncreasingRhythm, Rhythm, SignedRhythm
from .theory import ParentalPair, closed_form_bav0
from .verify import VerificationReport

__all__ = [
    "AnfPoly",
    "Basis",
    "BoolVec",
    "Convention",
    "IncreasingRhythm",
    "ModulusContext",
    "ParentalPair",
    "Rhythm",
    "Settings",
    "SignedIndex",
    "SignedRhythm",
    "VerificationReport",
    "ZnElement",
    "closed_form_bav0",
    "load_settings",
]
__version__ = "0.1.0"
