class CertificateError(RuntimeError):
    """A certificate step could not be carried out as constructed."""


class BoundTooLoose(CertificateError):
    """The monomial upper bound is not negative on the target interval."""
