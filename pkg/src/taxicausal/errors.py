class TaxicausalError(Exception):
    pass


class StructuralError(TaxicausalError, TypeError):
    """Objects from different spaces (backend, factor or model) were mixed."""


class DomainError(TaxicausalError, ValueError):
    """An argument is outside the domain of the operation."""


class DegenerateError(DomainError):
    """The operation is undefined for coincident inputs (zero distance)."""
