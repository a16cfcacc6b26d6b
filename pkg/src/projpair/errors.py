"""Exception hierarchy shared by every module."""


class ProjPairError(Exception):
    """Base class for all errors raised by projpair."""


class MatrixFormatError(ProjPairError, ValueError):
    """A matrix document or array could not be decoded."""


class NotSquare(ProjPairError, ValueError):
    pass


class DimensionMismatch(ProjPairError, ValueError):
    pass


class DimensionTooLarge(ProjPairError, ValueError):
    pass


class InvalidTolerance(ProjPairError, ValueError):
    pass


class NotHermitian(ProjPairError, ValueError):
    def __init__(self, residual, bound):
        self.residual = residual
        self.bound = bound
        super().__init__(f"Hermiticity residual {residual:.3e} exceeds {bound:.3e}")


class NotIdempotent(ProjPairError, ValueError):
    def __init__(self, residual, bound):
        self.residual = residual
        self.bound = bound
        super().__init__(f"idempotency residual {residual:.3e} exceeds {bound:.3e}")


class FrameNotOrthonormal(ProjPairError, ValueError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"frame columns are not orthonormal (residual {residual:.3e})")


class AmbiguousSpectrum(ProjPairError, ArithmeticError):
    """An eigenvalue sits just outside a classification bin."""

    def __init__(self, eigenvalue, bin_center):
        self.eigenvalue = eigenvalue
        self.bin_center = bin_center
        super().__init__(
            f"eigenvalue {eigenvalue!r} is too close to bin {bin_center} to classify"
        )


class OddGenericDimension(ProjPairError, ArithmeticError):
    pass


class SingularB(ProjPairError, ArithmeticError):
    def __init__(self, min_abs_eigenvalue):
        self.min_abs_eigenvalue = min_abs_eigenvalue
        super().__init__(
            f"matrix has an eigenvalue of magnitude {min_abs_eigenvalue:.3e}; sign is undefined"
        )


class NoSwapExists(ProjPairError):
    """dim K_{P,Q} != dim K_{1-P,1-Q}, so no unitary exchanges P and Q."""

    def __init__(self, dim_ker, dim_coker):
        self.dim_ker = dim_ker
        self.dim_coker = dim_coker
        self.index = dim_ker - dim_coker
        super().__init__(
            f"no swap unitary: dim ran P∩ker Q = {dim_ker}, "
            f"dim ker P∩ran Q = {dim_coker}, index = {self.index}"
        )


class NormTooLarge(ProjPairError, ValueError):
    def __init__(self, norm, limit):
        self.norm = norm
        self.limit = limit
        super().__init__(f"||P - Q|| = {norm:.6g} is not below {limit:.6g}")


class SeriesNotConverged(ProjPairError, ArithmeticError):
    pass


class EigenvalueOnContour(ProjPairError, ValueError):
    def __init__(self, eigenvalue, distance):
        self.eigenvalue = eigenvalue
        self.distance = distance
        super().__init__(
            f"eigenvalue {eigenvalue!r} lies {distance:.3e} from the contour"
        )


class QuadratureNotConverged(ProjPairError, ArithmeticError):
    pass


class RankChanged(ProjPairError, ValueError):
    def __init__(self, rank0, rankz):
        self.rank0 = rank0
        self.rankz = rankz
        super().__init__(f"Riesz projection rank changed from {rank0} to {rankz}")


class NonIntegerTrace(ProjPairError, ArithmeticError):
    pass


class InfeasibleSpec(ProjPairError, ValueError):
    pass
