class AuthorCreditError(Exception):
    """Base class for errors raised by this package."""


class MalformedStatementError(AuthorCreditError, ValueError):
    """A contribution line could not be split into phrase and acronyms."""


class UnresolvableAcronymsError(AuthorCreditError, ValueError):
    """None of a statement's acronym tokens could be matched to an author."""

    def __init__(self, message, dropped=()):
        super().__init__(message)
        self.dropped = list(dropped)


class NormalizationError(AuthorCreditError, ValueError):
    """A distribution that must sum to one does not."""


class EmptyContributionError(AuthorCreditError, ValueError):
    """An article or matrix carries no credited contribution."""


class EmptyCorpusError(AuthorCreditError, ValueError):
    """An aggregate was requested over an empty corpus or cohort."""
