"""Exception hierarchy. Every class carries the exit code the command line
returns when it escapes a command."""


class EntlabError(Exception):
    exit_code = 1


class ParseError(EntlabError):
    """Malformed state, Kraus or settings input."""
    exit_code = 3

    def __init__(self, msg, lineno=None, source=None):
        if lineno is not None:
            msg = '{}: line {:d}: {}'.format(source or '<input>', lineno, msg)
        super(ParseError, self).__init__(msg)
        self.lineno = lineno


class ContractError(EntlabError):
    """Input violates a documented precondition or type invariant."""
    exit_code = 4


class ArgumentError(ContractError):
    pass


class SizeError(ContractError):
    pass


class NotDistillableError(ContractError):
    pass


class NumericalError(EntlabError):
    """A result failed a numerical consistency check."""
    exit_code = 5


class FilterFailure(NumericalError):
    pass
