"""Seeded random instances and the property sweeps run by ``eb_update demo properties``.

Masses drawn here have denominators of at most MAX_DENOMINATOR; posteriors obtained by
conditioning a random extension may have larger ones.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Algebra, Event, StateSpace
from .decision import check_extension_consistency
from .engine import (Chain, UpdatePair, UpdateStatus, beta_feasible,
                     chain_common_witness, check_commensurate,
                     check_common_witness, classify_update,
                     conditional_bounds, construct_witness, verify_witness)
from .errors import NotCommensurateError
from .measures import Measure, conditional, mass, outer_measure
from .progress import mark_failure, progress_bar

logger = logging.getLogger('eb_update')

MAX_DENOMINATOR = 12
MAX_STATES = 8
MAX_ATTEMPTS = 1000


def random_masses(rng: random.Random, k: int, zero_prob: float = 0.25) -> list[Fraction]:
    """k nonnegative rationals summing to 1, all with a common denominator <= MAX_DENOMINATOR."""
    support = [i for i in range(k) if rng.random() >= zero_prob] or [rng.randrange(k)]
    den = rng.randint(len(support), max(len(support), MAX_DENOMINATOR))
    cuts = sorted(rng.sample(range(1, den), len(support) - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, den])]
    res = [Fraction(0)] * k
    for i, part in zip(support, parts):
        res[i] = Fraction(part, den)
    return res


def random_space(rng: random.Random, max_states: int = MAX_STATES, min_states: int = 2) -> StateSpace:
    """States w0 .. w{n-1}."""
    n = rng.randint(min_states, max_states)
    return StateSpace(tuple(f'w{i}' for i in range(n)))


def _groups(rng: random.Random, members: list[int], count: int) -> list[frozenset[int]]:
    labels = [rng.randrange(count) for _ in members]
    res = {}
    for s, lbl in zip(members, labels):
        res.setdefault(lbl, set()).add(s)
    return [frozenset(g) for g in res.values()]


def random_partition(rng: random.Random, space: StateSpace) -> Algebra:
    """A random partition of the space."""
    blocks = _groups(rng, list(range(space.size)), rng.randint(1, space.size))
    return Algebra(space, tuple(Event(space, b) for b in blocks))


def random_refinement(rng: random.Random, coarse: Algebra, strict: bool = False) -> Algebra:
    """Split every atom into random sub-blocks; with `strict`, at least one splittable atom is split."""
    space = coarse.space
    for _ in range(MAX_ATTEMPTS):
        blocks = []
        for atom in coarse.atoms:
            members = list(atom)
            blocks.extend(_groups(rng, members, rng.randint(1, len(members))))
        if not strict or len(blocks) > len(coarse.atoms) or len(coarse.atoms) == space.size:
            return Algebra(space, tuple(Event(space, b) for b in blocks))
    return Algebra(space, tuple(Event(space, b) for b in blocks))


def random_measure(rng: random.Random, algebra: Algebra, zero_prob: float = 0.25) -> Measure:
    """A random measure on the algebra."""
    return Measure(algebra, tuple(random_masses(rng, len(algebra.atoms), zero_prob)))


def random_extension(rng: random.Random, coarse_measure: Measure, fine: Algebra) -> Measure:
    """An extension splitting each coarse atom's mass randomly among its sub-atoms."""
    masses = [Fraction(0)] * len(fine.atoms)
    for atom, m in coarse_measure.items():
        subs = fine.sub_atoms(atom)
        for i, share in zip(subs, random_masses(rng, len(subs))):
            masses[i] = m * share
    return Measure(fine, tuple(masses))


def random_conditioned(rng: random.Random, coarse_measure: Measure, fine: Algebra) -> Measure:
    """Condition a random extension on a random union of its positive atoms."""
    ext = random_extension(rng, coarse_measure, fine)
    positive = [i for i, m in enumerate(ext.masses) if m > 0]
    chosen = [i for i in positive if rng.random() < 0.6] or [rng.choice(positive)]
    return conditional(ext, fine.union(chosen))


def random_pair(rng: random.Random, max_states: int = MAX_STATES, positive_outer: bool = True) -> UpdatePair:
    """A random update: half of the posteriors are arbitrary, half come from conditioning an extension."""
    for _ in range(MAX_ATTEMPTS):
        space = random_space(rng, max_states)
        coarse = random_partition(rng, space)
        fine = random_refinement(rng, coarse)
        prior = random_measure(rng, coarse)
        if rng.random() < 0.5:
            posterior = random_measure(rng, fine)
        else:
            posterior = random_conditioned(rng, prior, fine)
        pair = UpdatePair(prior, posterior)
        if not positive_outer or outer_measure(prior, pair.evidence) > 0:
            return pair
    raise RuntimeError('Could not draw a pair with positive outer evidence.')


def random_cnm_pair(rng: random.Random, max_states: int = MAX_STATES) -> UpdatePair:
    """A random update whose evidence is completely non-measurable and has positive prior outer measure."""
    for _ in range(MAX_ATTEMPTS):
        space = random_space(rng, max_states)
        coarse = random_partition(rng, space)
        fine = random_refinement(rng, coarse, strict=True)
        chosen = []
        for atom in coarse.atoms:
            subs = fine.sub_atoms(atom)
            if len(subs) < 2:
                continue
            keep = [i for i in subs if rng.random() < 0.5][:len(subs) - 1]
            chosen.extend(keep)
        if not chosen:
            continue
        masses = [Fraction(0)] * len(fine.atoms)
        for i, m in zip(chosen, random_masses(rng, len(chosen), zero_prob=0)):
            masses[i] = m
        prior = random_measure(rng, coarse)
        pair = UpdatePair(prior, Measure(fine, tuple(masses)))
        if outer_measure(prior, pair.evidence) > 0:
            return pair
    raise RuntimeError('Could not draw a completely non-measurable pair.')


def random_chain(rng: random.Random, max_length: int = 4, max_states: int = MAX_STATES) -> Chain:
    """A chain whose consecutive links are all EB_POSITIVE."""
    for _ in range(MAX_ATTEMPTS):
        length = rng.randint(2, max_length)
        space = random_space(rng, max_states, min_states=length)
        current = random_measure(rng, random_partition(rng, space))
        measures = [current]
        for _ in range(length - 1):
            current = random_conditioned(rng, current, random_refinement(rng, current.algebra, strict=True))
            measures.append(current)
        chain = Chain(tuple(measures))
        links = [classify_update(chain.pair(i, i + 1)).status for i in range(length - 1)]
        if all(s is UpdateStatus.EB_POSITIVE for s in links):
            return chain
    raise RuntimeError('Could not draw an extended Bayesian chain.')


@dataclass
class SweepResult:
    """Outcome of a randomized property sweep."""
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True if no sample failed."""
        return not self.failures

    def fail(self, msg: str):
        """Record a failing sample."""
        logger.warning(f'{self.name}: {msg}')
        mark_failure()
        self.failures.append(msg)


def _witness_ok(pair: UpdatePair) -> bool:
    try:
        witness = construct_witness(pair)
    except NotCommensurateError:
        return False
    return verify_witness(pair, witness.interim)[0]


def sweep_commensurability(rng: random.Random, samples: int) -> SweepResult:
    """Commensurability holds iff a witness is built and verified; the beta oracle agrees on negatives."""
    res = SweepResult('commensurability')
    for k in progress_bar(range(samples), description=res.name):
        pair = random_pair(rng)
        comm = check_commensurate(pair).holds
        if comm != _witness_ok(pair):
            res.fail(f'sample {k}: commensurate={comm} disagrees with witness construction')
        if not comm and beta_feasible(pair):
            res.fail(f'sample {k}: beta oracle finds a feasible beta for a non commensurate pair')
        res.checked += 1
    return res


def sweep_consistency(rng: random.Random, samples: int) -> SweepResult:
    """Extension consistency agrees with commensurability when the evidence has positive outer measure."""
    res = SweepResult('extension-consistency')
    for k in progress_bar(range(samples), description=res.name):
        pair = random_pair(rng)
        comm = check_commensurate(pair).holds
        cons = check_extension_consistency(pair).consistent
        if comm != cons:
            res.fail(f'sample {k}: commensurate={comm} but consistent={cons}')
        res.checked += 1
    return res


def sweep_chains(rng: random.Random, samples: int, max_length: int = 4) -> SweepResult:
    """Every pair of an EB chain is EB_POSITIVE and the common witness reproduces every period."""
    res = SweepResult('chains')
    for k in progress_bar(range(samples), description=res.name):
        chain = random_chain(rng, max_length)
        links, witness = chain_common_witness(chain)
        bad = [nm for nm, r in links.items() if r.status is not UpdateStatus.EB_POSITIVE]
        if bad:
            res.fail(f'sample {k}: pairs {bad} are not EB_POSITIVE')
        periods = check_common_witness(chain, witness)
        if periods:
            res.fail(f'sample {k}: common witness fails at periods {periods}')
        res.checked += 1
    return res


def c1_holds(pair: UpdatePair) -> bool:
    """Absolute continuity on coarse atoms only."""
    return all(
        m0 > 0 or mass(pair.posterior, atom) == 0
        for atom, m0 in pair.prior.items()
    )


def sweep_nonmeasurable(rng: random.Random, samples: int) -> SweepResult:
    """With completely non-measurable evidence, the update holds iff absolute continuity does."""
    res = SweepResult('completely-nonmeasurable')
    for k in progress_bar(range(samples), description=res.name):
        pair = random_cnm_pair(rng)
        holds = classify_update(pair).status.holds
        if holds != c1_holds(pair):
            res.fail(f'sample {k}: classification holds={holds} disagrees with absolute continuity')
        res.checked += 1
    return res


def sweep_envelope(rng: random.Random, samples: int) -> SweepResult:
    """Extended Bayesian posteriors lie within the inner/outer envelopes given the evidence."""
    res = SweepResult('envelope')
    done = 0
    for k in progress_bar(range(samples), description=res.name):
        pair = random_pair(rng, max_states=6)
        if classify_update(pair).status is not UpdateStatus.EB_POSITIVE:
            continue
        s1 = pair.evidence
        for event in pair.fine.events():
            inner, outer = conditional_bounds(pair.prior, pair.fine, s1, event)
            p = mass(pair.posterior, event)
            if not inner <= p <= outer:
                res.fail(f'sample {k}: posterior {p} of {event} outside [{inner}, {outer}]')
                break
        done += 1
    res.checked = done
    return res


SWEEPS: dict[str, Callable[[random.Random, int], SweepResult]] = {
    'commensurability': sweep_commensurability,
    'consistency': sweep_consistency,
    'chains': sweep_chains,
    'nonmeasurable': sweep_nonmeasurable,
    'envelope': sweep_envelope,
}


def run_sweeps(seed: int, samples: int, names: list[str] = None) -> list[SweepResult]:
    """Run the selected sweeps from one seeded generator."""
    rng = random.Random(seed)
    return [SWEEPS[name](rng, samples) for name in (names or list(SWEEPS))]
