# kummer_chow_verifier/errors.py
from typing import Any, Dict, Optional


class VerifierError(Exception):
    """Base class for every failure raised by the verification library."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.witness: Dict[str, Any] = dict(witness or {})

    def as_witness(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), **self.witness}


# rational field
class ZeroInverse(VerifierError):
    pass


class DegenerateNorm(VerifierError):
    pass


class PoleAtPoint(VerifierError):
    pass


class InvalidBranchPoint(VerifierError):
    pass


class InvalidHom(VerifierError):
    pass


# group engine
class NoMatch(VerifierError):
    pass


# differential operators
class NonMobiusPullback(VerifierError):
    pass


class OperatorOrderExceeded(VerifierError):
    pass


# numerics
class NoConvergence(VerifierError):
    pass


class DomainError(VerifierError):
    pass


# rank certificate
class DerivationMismatch(VerifierError):
    pass


class LiftTableMismatch(VerifierError):
    pass


class FactorizationFailure(VerifierError):
    pass
