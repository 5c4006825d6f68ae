"""Exception hierarchy for the eb_update engine."""


class EBError(Exception):
    """Base class for every error raised by eb_update."""


class InputError(EBError):
    """Malformed or inconsistent input (spaces, events, measures, formulas, files)."""


class UpdateError(EBError):
    """The engine refuses an operation on well formed input."""


class ResourceCapError(EBError):
    """A configured enumeration cap would be exceeded."""


class InvalidSpaceError(InputError):
    """State labels are empty or not pairwise distinct."""


class UnknownStateError(InputError):
    """A state label does not belong to the space."""


class SpaceMismatchError(InputError):
    """Two objects live on different state spaces."""


class OverlapError(InputError):
    """Two partition blocks intersect."""


class CoverageError(InputError):
    """Partition blocks do not cover the state space."""


class EmptyBlockError(InputError):
    """A partition block is empty."""


class EmptyEventError(InputError):
    """An operation requiring a nonempty event received the empty set."""


class NotMeasurableError(InputError):
    """An event is not a union of atoms of the relevant algebra."""


class NotARefinementError(InputError):
    """An algebra expected to be finer does not refine the coarser one."""


class AlgebraMismatchError(InputError):
    """A measure is defined on a different algebra than required."""


class InvalidRationalError(InputError):
    """A string or number cannot be read as an exact rational."""


class InvalidMeasureError(InputError):
    """Masses are negative or do not sum to exactly one."""


class EmbeddingError(InputError):
    """The original state space is not a measurable event of the expanded one."""


class InvalidUtilityError(InputError):
    """A utility index violates non-negativity, non-triviality or u(worst) = 0."""


class UnknownPrizeError(InputError):
    """A bet references a prize missing from the utility index."""


class FormulaSyntaxError(InputError):
    """A formula string does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f'{message} (at position {position})')
        self.position = position


class UnknownPropositionError(InputError):
    """A formula mentions a proposition missing from the proposition list."""


class AwarenessShrinkError(InputError):
    """Awareness sets are not increasing over periods."""


class MassAlgebraMismatchError(InputError):
    """Supplied masses cannot be placed on the period's algebra."""


class ScenarioError(InputError):
    """A scenario file cannot be read or does not follow the schema."""


class EmptyChainError(InputError):
    """A chain was given no period measures."""


class InvalidParameterError(InputError):
    """A numeric parameter lies outside its allowed range."""


class ZeroMassConditioningError(UpdateError):
    """Conditioning on an event of measure zero."""


class NotCommensurateError(UpdateError):
    """The posterior is not commensurate to the prior."""

    def __init__(self, violation):
        super().__init__(f'posterior is not commensurate to the prior: {violation}')
        self.violation = violation


class TriviallyConditionedError(UpdateError):
    """The conditioning event has outer measure zero under the prior."""


class TrivialLinkError(UpdateError):
    """A link of a chain conditions on an event of prior outer measure zero."""

    def __init__(self, link: int):
        super().__init__(
            f'link {link} -> {link + 1} conditions on an event of prior outer measure 0; '
            'no common witness exists in general'
        )
        self.link = link


class ExplosionError(ResourceCapError):
    """The number of extension vertices exceeds the cap."""


class TooManyAtomsError(ResourceCapError):
    """Too many coarse atoms for exhaustive event enumeration."""
