"""Exception types raised across the package."""


class VRError(Exception):
    """Base class for computational errors (CLI exit code 1)."""


class NonInvertible(VRError, ValueError):
    pass


class NonResidue(VRError, ValueError):
    pass


class BadSeed(VRError, ValueError):
    pass


class NotPrime(VRError, ValueError):
    pass


class NotSplit(VRError, ValueError):
    pass


class NotPrincipal(VRError):
    pass


class ConductorNotCoprime(VRError, ValueError):
    pass


class NotFundamental(VRError, ValueError):
    pass


class NotOneModFour(VRError, ValueError):
    pass


class InternalInconsistency(VRError):
    pass


class NonConvergence(VRError):
    pass


class CheckpointVersionMismatch(VRError):
    pass
