"""Exception hierarchy shared by the engine and the DSL frontend."""


class RLError(Exception):
    """Base class for every error raised by the engine."""


class EmptyUniverse(RLError, ValueError):
    pass


class DuplicateLabel(RLError, ValueError):
    pass


class UniverseTooLarge(RLError, ValueError):
    pass


class UniverseMismatch(RLError, ValueError):
    pass


class UnknownPoint(RLError, KeyError):
    pass


class ChoiceFromUndefinedSet(RLError, ValueError):
    pass


class PartialRelation(RLError, ValueError):
    pass


class NotEquivalence(RLError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSensible(RLError, ValueError):
    pass


class IndefiniteOperand(NotSensible):
    pass


class NonsenseEval(RLError, ValueError):
    pass


class NotTransitiveReflexive(RLError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotWellOrdered(RLError, ValueError):
    pass


class NotInjective(RLError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonTotal(RLError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonPeriodicWithinBound(RLError, ValueError):
    pass


class BaseMismatch(RLError, ValueError):
    pass


class OutsideCodomain(RLError, ValueError):
    pass


class NotAMapping(RLError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OverlappingSets(RLError, ValueError):
    pass
