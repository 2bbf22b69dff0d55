class CombsimError(Exception):
    """Base class for all errors raised by combsim."""


class GroundMismatchError(CombsimError, ValueError):
    pass


class NotEquivalenceError(CombsimError, ValueError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class InvalidPseudometricError(CombsimError, ValueError):
    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class UnknownSymbolError(CombsimError, KeyError):
    pass


class NotAGroupError(CombsimError, ValueError):
    pass


class NotAHomomorphismError(CombsimError, ValueError):
    pass


class NotABijectionError(CombsimError, ValueError):
    pass


class NotASemigroupError(CombsimError, ValueError):
    pass


class PreconditionError(CombsimError, ValueError):
    pass


class CapExceededError(CombsimError, RuntimeError):
    """A search or closure ran past its configured limit."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap
