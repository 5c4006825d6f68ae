"""Extended Bayesian updates: commensurability, witnesses, classification, chains and envelopes."""
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .algebra import (Algebra, Event, StateSpace, discrete_algebra,
                      is_completely_nonmeasurable, make_algebra, refines,
                      trace_algebra)
from .errors import (AlgebraMismatchError, EmbeddingError, EmptyChainError,
                     InvalidParameterError, NotARefinementError,
                     NotCommensurateError, NotMeasurableError,
                     SpaceMismatchError, TrivialLinkError,
                     TriviallyConditionedError)
from .measures import (Measure, check_same_algebra, conditional,
                       iter_extension_vertices, mass, outer_measure, restrict,
                       support)

logger = logging.getLogger('eb_update')


class UpdateStatus(str, enum.Enum):
    """Classification of a (prior, posterior) pair."""
    BAYESIAN = 'BAYESIAN'
    EB_POSITIVE = 'EB_POSITIVE'
    EB_TRIVIAL = 'EB_TRIVIAL'
    FAILS = 'FAILS'

    @property
    def holds(self) -> bool:
        """True for every status but FAILS."""
        return self is not UpdateStatus.FAILS


@dataclass(frozen=True)
class Violation:
    """A failed condition together with the events exhibiting the failure."""
    condition: str
    events: tuple[Event, ...]
    detail: str = ''

    def __str__(self):
        evs = ', '.join(str(e) for e in self.events)
        res = f'{self.condition} violated at ({evs})'
        if self.detail:
            res += f': {self.detail}'
        return res


@dataclass(frozen=True)
class UpdatePair:
    """A prior on a coarse algebra and a posterior on a finer one over the same state space."""
    prior: Measure
    posterior: Measure

    def __post_init__(self):
        if self.prior.space != self.posterior.space:
            raise SpaceMismatchError('Prior and posterior live on different state spaces.')
        if not refines(self.posterior.algebra, self.prior.algebra):
            raise NotARefinementError(
                f'Posterior algebra {self.posterior.algebra} does not refine prior algebra {self.prior.algebra}.'
            )

    @property
    def coarse(self) -> Algebra:
        """The prior's algebra."""
        return self.prior.algebra

    @property
    def fine(self) -> Algebra:
        """The posterior's algebra."""
        return self.posterior.algebra

    @property
    def evidence(self) -> Event:
        """The posterior's support S1."""
        return support(self.posterior)


@dataclass(frozen=True)
class Witness:
    """An interim measure on the fine algebra certifying extended Bayesianism."""
    interim: Measure
    beta: Fraction


class Commensurability(NamedTuple):
    """Outcome of the commensurability check."""
    holds: bool
    violation: Violation | None
    inf_ratio: Fraction | None


@dataclass(frozen=True)
class UpdateReport:
    """Classification of an update with its certificate or its violation."""
    status: UpdateStatus
    witness: Witness | None = None
    violation: Violation | None = None
    completely_nonmeasurable: bool = False
    reverse_bayesian: bool = False
    inf_ratio: Fraction | None = None
    outer_evidence: Fraction = Fraction(0)
    generalized_reverse_bayesian: bool | None = None


@dataclass(frozen=True)
class Chain:
    """Measures over increasingly fine algebras on a common state space."""
    measures: tuple[Measure, ...]

    def __post_init__(self):
        object.__setattr__(self, 'measures', tuple(self.measures))
        if not self.measures:
            raise EmptyChainError('A chain needs at least one measure.')
        for i, (prev, nxt) in enumerate(zip(self.measures, self.measures[1:])):
            if prev.space != nxt.space:
                raise SpaceMismatchError(f'Periods {i} and {i + 1} live on different state spaces.')
            if not refines(nxt.algebra, prev.algebra):
                raise NotARefinementError(f'Algebra of period {i + 1} does not refine the one of period {i}.')

    def __len__(self):
        return len(self.measures)

    @property
    def algebras(self) -> tuple[Algebra, ...]:
        """Algebras of each period."""
        return tuple(m.algebra for m in self.measures)

    def pair(self, n: int, m: int) -> UpdatePair:
        """The update from period n to period m."""
        return UpdatePair(self.measures[n], self.measures[m])


@dataclass(frozen=True)
class ChainReport:
    """Reports for every pair (n, m), n < m, and the common witness when it exists."""
    links: dict[tuple[int, int], UpdateReport]
    witness: Measure | None = None
    trivial_link: int | None = field(default=None)

    @property
    def holds(self) -> bool:
        """True if no pair fails and a common witness was built."""
        return self.witness is not None and all(r.status.holds for r in self.links.values())


def _ratio_infimum(pair: UpdatePair) -> Fraction | None:
    """min pi0(F)/pi1(F) over coarse atoms F with pi1(F) > 0."""
    ratios = []
    for atom, m0 in pair.prior.items():
        m1 = mass(pair.posterior, atom)
        if m1 > 0:
            ratios.append(m0 / m1)
    return min(ratios) if ratios else None


def check_commensurate(pair: UpdatePair) -> Commensurability:
    """Check absolute continuity (c1) and the ratio inequalities (c2) on coarse atoms.

    Atom-level quantification suffices: both conditions are additive over the atoms of
    the events involved. The c3 infimum is reported alongside; on finite spaces it is
    implied by c1 and c2.
    """
    prior, posterior = pair.prior, pair.posterior
    s1 = pair.evidence
    m0 = prior.masses
    m1 = [mass(posterior, atom) for atom in prior.algebra.atoms]
    inf_ratio = _ratio_infimum(pair)

    for atom, p0, p1 in zip(prior.algebra.atoms, m0, m1):
        if p0 == 0 and p1 != 0:
            return Commensurability(
                False,
                Violation('c1', (atom,), f'prior mass 0 but posterior mass {p1}'),
                inf_ratio
            )

    inside = prior.algebra.atoms_within(s1)
    for e in inside:
        for f, atom_f in enumerate(prior.algebra.atoms):
            lhs = m0[e] * m1[f]
            rhs = m1[e] * m0[f]
            if lhs > rhs:
                return Commensurability(
                    False,
                    Violation(
                        'c2', (prior.algebra.atoms[e], atom_f),
                        f'{m0[e]}*{m1[f]} = {lhs} > {rhs} = {m1[e]}*{m0[f]}'
                    ),
                    inf_ratio
                )
    return Commensurability(True, None, inf_ratio)


def _beta(pair: UpdatePair, inf_ratio: Fraction) -> Fraction:
    inside = pair.coarse.atoms_within(pair.evidence)
    if inside:
        atom = pair.coarse.atoms[inside[0]]
        return pair.prior.atom_mass(inside[0]) / mass(pair.posterior, atom)
    return inf_ratio


def construct_witness(pair: UpdatePair) -> Witness:
    """Build the interim measure of the constructive proof of the finite characterization.

    Inside the evidence S1 the interim is beta times the posterior. Each coarse atom's
    residual mass is spread uniformly over its fine sub-atoms outside S1.
    """
    s1 = pair.evidence
    outer = outer_measure(pair.prior, s1)
    if outer == 0:
        raise TriviallyConditionedError(
            f'Evidence {s1} has prior outer measure 0: any measure supported on it is admissible.'
        )
    comm = check_commensurate(pair)
    if not comm.holds:
        raise NotCommensurateError(comm.violation)

    beta = _beta(pair, comm.inf_ratio)
    logger.debug(f'Constructing witness with beta = {beta}')

    fine = pair.fine
    interim = [Fraction(0)] * len(fine.atoms)
    for i, atom in enumerate(fine.atoms):
        if atom <= s1:
            interim[i] = beta * pair.posterior.atom_mass(i)

    for c, coarse_atom in enumerate(pair.coarse.atoms):
        subs = fine.sub_atoms(coarse_atom)
        outside = [i for i in subs if not fine.atoms[i] <= s1]
        residual = pair.prior.atom_mass(c) - sum((interim[i] for i in subs), Fraction(0))
        if not outside:
            continue
        share = residual / len(outside)
        for i in outside:
            interim[i] = share

    return Witness(interim=Measure(fine, tuple(interim)), beta=beta)


def verify_witness(pair: UpdatePair, candidate: Measure) -> tuple[bool, Violation | None]:
    """Check eb1 (the candidate extends the prior) and eb2 (conditioning it on S1 gives the posterior)."""
    check_same_algebra(candidate, pair.fine)
    for atom, m0 in pair.prior.items():
        got = mass(candidate, atom)
        if got != m0:
            return False, Violation('eb1', (atom,), f'candidate mass {got} != prior mass {m0}')

    s1 = pair.evidence
    if outer_measure(pair.prior, s1) == 0:
        return True, None
    total = mass(candidate, s1)
    if total == 0:
        return False, Violation('eb2', (s1,), 'candidate assigns mass 0 to the evidence')
    cond = conditional(candidate, s1)
    for atom, got, want in zip(pair.fine.atoms, cond.masses, pair.posterior.masses):
        if got != want:
            return False, Violation('eb2', (atom,), f'conditional mass {got} != posterior mass {want}')
    return True, None


def check_bayesian(pair: UpdatePair) -> tuple[bool, Violation | None]:
    """Literal Bayes rule (b1) for equal algebras."""
    if pair.coarse != pair.fine:
        raise AlgebraMismatchError('Bayesianism is defined for equal algebras only.')
    s1 = pair.evidence
    if mass(pair.prior, s1) == 0:
        return True, None
    cond = conditional(pair.prior, s1)
    for atom, got, want in zip(pair.fine.atoms, cond.masses, pair.posterior.masses):
        if got != want:
            return False, Violation('b1', (atom,), f'conditional prior mass {got} != posterior mass {want}')
    return True, None


def classify_update(pair: UpdatePair) -> UpdateReport:
    """Classify an update as BAYESIAN, EB_POSITIVE, EB_TRIVIAL or FAILS."""
    s1 = pair.evidence
    outer = outer_measure(pair.prior, s1)
    flags = {
        'completely_nonmeasurable': is_completely_nonmeasurable(pair.coarse, s1),
        'reverse_bayesian': restrict(pair.posterior, pair.coarse) == pair.prior,
        'outer_evidence': outer,
    }
    if outer == 0:
        return UpdateReport(UpdateStatus.EB_TRIVIAL, **flags)

    comm = check_commensurate(pair)
    flags['inf_ratio'] = comm.inf_ratio
    if pair.coarse == pair.fine:
        ok, violation = check_bayesian(pair)
        if not ok:
            return UpdateReport(UpdateStatus.FAILS, violation=comm.violation or violation, **flags)
    if not comm.holds:
        return UpdateReport(UpdateStatus.FAILS, violation=comm.violation, **flags)

    witness = construct_witness(pair)
    ok, violation = verify_witness(pair, witness.interim)
    if not ok:
        logger.warning(f'Constructed witness failed verification: {violation}')
        return UpdateReport(UpdateStatus.FAILS, violation=violation, **flags)

    status = UpdateStatus.BAYESIAN if pair.coarse == pair.fine else UpdateStatus.EB_POSITIVE
    return UpdateReport(status, witness=witness, **flags)


def check_geb(prior: Measure, posterior: Measure) -> UpdateReport:
    """Generalized extended Bayesianism when the state space itself expands.

    The prior lives on Omega, the posterior on a space containing Omega's labels.
    """
    big = posterior.space
    missing = [lbl for lbl in prior.space.labels if lbl not in big.labels]
    if missing:
        raise EmbeddingError(f'States {missing} of the original space are missing from the expanded one.')
    omega = big.event(prior.space.labels)
    if not posterior.algebra.is_measurable(omega):
        raise EmbeddingError('The original state space is not a measurable event of the expanded algebra.')

    trace = trace_algebra(posterior.algebra, omega, prior.space)
    if mass(posterior, omega) == 0:
        return UpdateReport(
            UpdateStatus.FAILS,
            violation=Violation('geb', (omega,), 'posterior assigns mass 0 to the original state space'),
            generalized_reverse_bayesian=False,
        )

    cond = conditional(posterior, omega)
    restricted = Measure.from_events(
        trace, [(prior.space.event(atom.labels), m) for atom, m in cond.items() if atom <= omega]
    )
    report = classify_update(UpdatePair(prior, restricted))
    grb = report.status.holds and trace == prior.algebra
    return UpdateReport(
        report.status,
        witness=report.witness,
        violation=report.violation,
        completely_nonmeasurable=report.completely_nonmeasurable,
        reverse_bayesian=report.reverse_bayesian,
        inf_ratio=report.inf_ratio,
        outer_evidence=report.outer_evidence,
        generalized_reverse_bayesian=grb,
    )


def chain_reports(chain: Chain) -> dict[tuple[int, int], UpdateReport]:
    """Classify every pair (n, m) with n < m directly."""
    res = {}
    for n in range(len(chain)):
        for m in range(n + 1, len(chain)):
            res[(n, m)] = classify_update(chain.pair(n, m))
    return res


def chain_common_witness(chain: Chain) -> tuple[dict[tuple[int, int], UpdateReport], Measure]:
    """Classify all pairs and build one measure on the finest algebra extending every period.

    The common witness is built by chaining witnesses: each interim measure becomes the
    prior of the next link.
    """
    for i in range(len(chain) - 1):
        report = classify_update(chain.pair(i, i + 1))
        if report.status is UpdateStatus.EB_TRIVIAL:
            raise TrivialLinkError(i)
        if report.status is UpdateStatus.FAILS:
            raise NotCommensurateError(report.violation)

    current = chain.measures[0]
    for i, nxt in enumerate(chain.measures[1:]):
        witness = construct_witness(UpdatePair(current, nxt))
        logger.debug(f'Chain link {i} -> {i + 1}: beta = {witness.beta}')
        current = witness.interim
    return chain_reports(chain), current


def check_common_witness(chain: Chain, witness: Measure) -> list[int]:
    """Periods n for which conditioning the witness on S_n and restricting to period n fails to give pi_n."""
    bad = []
    for n, measure in enumerate(chain.measures):
        s_n = support(measure)
        if mass(witness, s_n) == 0 or restrict(conditional(witness, s_n), measure.algebra) != measure:
            bad.append(n)
    return bad


def chain_report(chain: Chain) -> ChainReport:
    """All pair reports and, when the chain allows it, the common witness."""
    try:
        links, witness = chain_common_witness(chain)
    except TrivialLinkError as e:
        logger.debug(str(e))
        return ChainReport(chain_reports(chain), None, trivial_link=e.link)
    except NotCommensurateError as e:
        logger.debug(str(e))
        return ChainReport(chain_reports(chain), None)
    return ChainReport(links, witness)


def conditional_bounds(
        prior: Measure, fine: Algebra, given: Event, target: Event,
        cap: int = None
    ) -> tuple[Fraction, Fraction]:
    """Inner and outer conditional probability of `target` given `given` over all extensions of the prior.

    The objective is linear-fractional over a product of simplices, so the extrema are
    attained at extension vertices with positive mass on `given`.
    """
    for name, event in (('given', given), ('target', target)):
        fine.check_event(event)
        if not fine.is_measurable(event):
            raise NotMeasurableError(f'{name} event {event} is not measurable in {fine}.')
    if outer_measure(prior, given) == 0:
        raise TriviallyConditionedError(f'{given} has prior outer measure 0.')

    both = target & given
    inner = outer = None
    for vertex in iter_extension_vertices(prior, fine, cap=cap):
        den = mass(vertex.measure, given)
        if den == 0:
            continue
        ratio = mass(vertex.measure, both) / den
        inner = ratio if inner is None else min(inner, ratio)
        outer = ratio if outer is None else max(outer, ratio)
    return inner, outer


def envelope_check(pair: UpdatePair, cap: int = None) -> tuple[bool, Event | None]:
    """Whether every fine atom's posterior mass lies between the envelopes given S1.

    Necessary for EB; returns the first atom outside its envelope, if any.
    """
    s1 = pair.evidence
    for atom, p in pair.posterior.items():
        inner, outer = conditional_bounds(pair.prior, pair.fine, s1, atom, cap=cap)
        if not inner <= p <= outer:
            return False, atom
    return True, None


def truncated_example(n: int) -> UpdatePair:
    """Finite truncation of the countable example where c1/c2 hold but the ratio infimum vanishes.

    States (k, A) and (k, B) for k = 0..n; the prior gives block k mass proportional to
    1/2 for k = 0 and 3^-k otherwise; the posterior gives (k, A) mass proportional to 2^-k
    for k >= 1 and nothing elsewhere.
    """
    if n < 1:
        raise InvalidParameterError('The truncation needs at least one block beyond block 0.')
    labels = [f'{k}{side}' for k in range(n + 1) for side in 'AB']
    space = StateSpace(tuple(labels))
    coarse = make_algebra(space, [space.event([f'{k}A', f'{k}B']) for k in range(n + 1)])
    fine = discrete_algebra(space)

    w0 = [Fraction(1, 2)] + [Fraction(1, 3**k) for k in range(1, n + 1)]
    z0 = sum(w0)
    prior = Measure(coarse, tuple(w / z0 for w in w0))

    w1 = {f'{k}A': Fraction(1, 2**k) for k in range(1, n + 1)}
    z1 = sum(w1.values())
    posterior = Measure(fine, tuple(w1.get(lbl, Fraction(0)) / z1 for lbl in labels))
    return UpdatePair(prior, posterior)


def truncation_normalizers(n: int) -> tuple[Fraction, Fraction]:
    """Normalizing constants (prior, posterior) of `truncated_example(n)`."""
    z0 = Fraction(1, 2) + sum(Fraction(1, 3**k) for k in range(1, n + 1))
    z1 = sum(Fraction(1, 2**k) for k in range(1, n + 1))
    return z0, z1


def truncation_beta(n: int) -> Fraction:
    """Witness beta of `truncated_example(n)` with the normalizations factored out: beta_n * Z0 / Z1."""
    z0, z1 = truncation_normalizers(n)
    return construct_witness(truncated_example(n)).beta * z0 / z1


def truncation_beta_ratio(n: int) -> Fraction:
    """Ratio of the normalized betas of the truncations n + 1 and n."""
    return truncation_beta(n + 1) / truncation_beta(n)


def beta_feasible(pair: UpdatePair) -> bool:
    """Independent one-dimensional test: some beta > 0 with beta*pi1(B) <= pi0(B) for every coarse atom B,
    with equality whenever B lies inside the evidence."""
    s1 = pair.evidence
    upper = None
    fixed = set()
    for atom, m0 in pair.prior.items():
        m1 = mass(pair.posterior, atom)
        if m1 == 0:
            continue
        ratio = m0 / m1
        upper = ratio if upper is None else min(upper, ratio)
        if atom <= s1:
            fixed.add(ratio)
    if upper is None or upper <= 0:
        return False
    if not fixed:
        return True
    return len(fixed) == 1 and 0 < next(iter(fixed)) <= upper
