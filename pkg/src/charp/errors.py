"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI reports.
"""


class CharpError(Exception):
    code = "error"


class ResourceExceeded(CharpError):
    code = "resource_exceeded"


class UnsupportedBase(CharpError):
    code = "unsupported_base"


class NotPrime(CharpError):
    code = "not_prime"


class NotRegular(CharpError):
    code = "not_regular"


class NotCodimOne(CharpError):
    code = "not_codim_one"


class ValueCapExceeded(CharpError):
    code = "value_cap_exceeded"


class NotTriviallyValued(CharpError):
    code = "not_trivially_valued"


class NotPrimeUpstairs(CharpError):
    code = "not_prime_upstairs"


class NotFormallySmooth(CharpError):
    code = "not_formally_smooth"


class ResidueEmbeddingInvalid(CharpError):
    code = "residue_embedding_invalid"


class PrecisionTooLow(CharpError):
    code = "precision_too_low"


class UnsupportedPresentation(CharpError):
    code = "unsupported_presentation"


class FormulaSyntaxError(CharpError):
    code = "syntax_error"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownConstant(CharpError):
    code = "unknown_constant"


class NotExistential(CharpError):
    code = "not_existential"


class NotNNF(CharpError):
    code = "not_nnf"


class BudgetExceeded(CharpError):
    code = "budget_exceeded"
