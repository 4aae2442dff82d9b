"""Exception types shared across the package.

Plain ``ValueError`` is used for malformed inputs (bad residues, duplicate
elements, out-of-range arguments).  The two classes below mark conditions
with different semantics:

* ``CapabilityError`` — the request is well-formed but exceeds a documented
  operating limit (witness-table memory threshold, dilation scan limit,
  verification range).  Callers can retry with different parameters.
* ``ContractError`` — an internal guarantee was broken: a construction that
  is proved to succeed under its stated margin failed anyway.  This is a
  bug indicator and is never raised for out-of-margin inputs.
"""


class CapabilityError(RuntimeError):
    """Raised when a request exceeds a documented capability limit."""


class ContractError(AssertionError):
    """Raised when an internal guarantee that must hold was violated."""
