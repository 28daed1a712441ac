"""Exception hierarchy shared by every module."""


class ToricError(Exception):
    """Base class for all errors raised by toric_em."""


class NonGenericDirection(ToricError):
    pass


class NotFullDimensional(ToricError):
    pass


class NotLatticePolytope(ToricError):
    pass


class NotSimple(ToricError):
    pass


class NotDelzant(ToricError):
    pass


class NotSimplicial(ToricError):
    pass


class SingularVertex(ToricError):
    pass


class NotASummand(ToricError):
    pass


class InadmissibleDilation(ToricError):
    pass


class EvaluationPole(ToricError):
    pass


class PoleResidueNonzero(ToricError):
    """Negative-degree terms survived a sum that must be regular (a bug trap)."""


class MismatchAtVertex(ToricError):
    def __init__(self, vertex, sample, deviation):
        super().__init__(f"mismatch at vertex {vertex} (sample {sample}): deviation {deviation}")
        self.vertex = vertex
        self.sample = sample
        self.deviation = deviation


class TruncationTooLow(ToricError):
    pass


class InconsistentSystem(ToricError):
    pass
