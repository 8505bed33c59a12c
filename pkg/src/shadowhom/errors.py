"""Exception hierarchy.  The CLI reports ``type(err).__name__`` on exit code 1."""


class ShadowHomError(Exception):
    """Base class for every domain error raised by the package."""


# quandle construction
class MalformedTable(ShadowHomError):
    pass


class AxiomViolation(ShadowHomError):
    def __init__(self, axiom, witness, detail=""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAGroup(ShadowHomError):
    pass


class IndexOutOfRange(ShadowHomError, IndexError):
    pass


class NotAQuandle(ShadowHomError):
    pass


# chains and homology
class DegreeZero(ShadowHomError):
    pass


class ElementOutOfRange(ShadowHomError):
    pass


class RingMismatch(ShadowHomError):
    pass


class DegreeMismatch(ShadowHomError):
    pass


class TooLarge(ShadowHomError):
    pass


class NonPrimeModulus(ShadowHomError):
    pass


class NotACocycle(ShadowHomError):
    pass


# diagrams
class Malformed(ShadowHomError):
    pass


class EdgeCountMismatch(Malformed):
    pass


class NotPlanar(Malformed):
    pass


class UnderStrandBroken(Malformed):
    pass


class InconsistentShadow(ShadowHomError):
    pass


class InvalidColouring(ShadowHomError):
    pass


# words / realization
class UnknownArc(ShadowHomError):
    pass


class NotACycle(ShadowHomError):
    def __init__(self, boundary):
        self.boundary = boundary
        super().__init__(f"boundary is nonzero: {boundary}")


class NonIntegerCoefficients(ShadowHomError):
    pass


class OrientationInconsistent(ShadowHomError):
    pass
