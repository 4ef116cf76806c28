"""Exception hierarchy shared by all modules.

Every error carries a stable ``code`` used by the command line front end.
Errors deriving from :class:`CompositeSignal` can only occur when the modulus
is not prime; the Proth prover turns them into a composite verdict.
"""


class DetrootError(Exception):
    code = "ERROR"


class EvenOrTinyModulus(DetrootError, ValueError):
    code = "BAD_MODULUS"


class CompositeSignal(DetrootError):
    """Raised when arithmetic behaves in a way impossible over a prime field."""

    code = "COMPOSITE_DETECTED"


class NonInvertible(CompositeSignal, ArithmeticError):
    def __init__(self, witness: int, modulus: int):
        self.witness = witness
        self.modulus = modulus
        super().__init__(f"gcd with modulus {modulus} is {witness}")


class EulerAmbiguous(CompositeSignal):
    def __init__(self, residue: int, modulus: int):
        self.residue = residue
        self.modulus = modulus
        super().__init__(f"Euler power is {residue} mod {modulus}, neither 1 nor -1")


class NoWitnessFound(CompositeSignal):
    pass


class InternalContradiction(CompositeSignal):
    pass


class NotASquare(DetrootError):
    code = "NOT_A_SQUARE"


class NotEasyCase(DetrootError):
    code = "NOT_EASY_CASE"


class PrecondViolated(DetrootError, ValueError):
    code = "PRECONDITION"


class OrderDoesNotDivide(DetrootError):
    code = "ORDER_DOES_NOT_DIVIDE"


class NotCubicResidue(DetrootError):
    code = "NOT_CUBIC_RESIDUE"


class WrongResidueClass(DetrootError):
    code = "WRONG_RESIDUE_CLASS"


class InfeasibleFactorization(DetrootError):
    code = "INFEASIBLE"


class NotProthForm(DetrootError, ValueError):
    code = "NOT_PROTH_FORM"


class NotTowerPrime(DetrootError, ValueError):
    code = "NOT_TOWER_PRIME"


class RecognitionFailed(DetrootError):
    code = "RECOGNITION_FAILED"

    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class CubeRootsHard(DetrootError):
    code = "CUBE_ROOTS_HARD"


class NoPrimitiveRoot(DetrootError):
    code = "NO_PRIMITIVE_ROOT"
