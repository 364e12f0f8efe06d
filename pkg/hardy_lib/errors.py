class HardyLabError(Exception):
    pass


class DomainError(HardyLabError, ValueError):
    """Argument outside the domain an operation is defined on."""
    pass


class SizeGuardError(HardyLabError):
    """Strategy enumeration would be too large to run at desk scale."""
    pass


class EmptyRecordError(HardyLabError, ZeroDivisionError):
    pass
