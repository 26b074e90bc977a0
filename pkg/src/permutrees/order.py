"""The inversion-set calculus: validity, inclusion order, covers, meet, join."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .decoration import Decoration
from .pairs import InversionSet, bits, interval_mask, transitive_closure


class InvalidInversionSet(ValueError):
    pass


def check_inversion_set(E: InversionSet, delta: Decoration) -> str | None:
    """Describe the first violated condition, or return None if `E` is valid.

    Triples ``i < j < k`` are scanned in ascending order; at each triple the
    four conditions are tried in order (transitivity, cotransitivity, the
    ``down`` rule at ``j``, the ``up`` rule at ``j``).
    """
    n = E.n
    if delta.n != n:
        raise ValueError(f"decoration has length {delta.n}, set has n={n}")
    rows = E.rows
    for i in range(1, n + 1):
        ri = rows[i - 1]
        for j in range(i + 1, n + 1):
            rj = rows[j - 1]
            above = interval_mask(j + 1, n)
            has_ij = bool(ri >> j & 1)
            d = delta[j]
            # each entry: (condition number, offending k's, message)
            checks = []
            if has_ij:
                checks.append((1, above & rj & ~ri, "transitivity"))
            else:
                checks.append((2, above & ~rj & ri, "cotransitivity"))
            if d.two_children and not has_ij:
                checks.append((3, above & rj & ri, f"down rule at {j}"))
            if d.two_parents and has_ij:
                checks.append((4, above & ~rj & ri, f"up rule at {j}"))
            hits = [(min(bits(m)), cond, msg) for cond, m, msg in checks if m]
            if hits:
                k, cond, msg = min(hits)
                return f"condition {cond} ({msg}) fails at ({i},{j},{k})"
    return None


def is_valid_inversion_set(E: InversionSet, delta: Decoration) -> bool:
    return check_inversion_set(E, delta) is None


def require_valid(E: InversionSet, delta: Decoration, name: str = "set"):
    problem = check_inversion_set(E, delta)
    if problem:
        raise InvalidInversionSet(f"{name} {E.format() or '∅'} is not a {delta.word}-inversion set: {problem}")


def leq(E1: InversionSet, E2: InversionSet) -> bool:
    """Rotation order, which is plain inclusion of inversion sets."""
    return E1 <= E2


def bridged_pairs(common: InversionSet) -> InversionSet:
    """All ``(i, j)`` such that every ``l`` strictly between has ``(i, l)``
    or ``(l, j)`` in `common`.  Adjacent pairs qualify vacuously."""
    n = common.n
    into = [0] * (n + 1)  # into[j]: bitmask of l with (l, j) in common
    for i, j in common:
        into[j] |= 1 << i
    rows = []
    for i, ri in enumerate(common.rows, start=1):
        keep = 0
        for j in range(i + 1, n + 1):
            if interval_mask(i + 1, j - 1) & ~(ri | into[j]) == 0:
                keep |= 1 << j
        rows.append(keep)
    return InversionSet(n, tuple(rows))


def meet_one_pass(E1: InversionSet, E2: InversionSet) -> InversionSet:
    """``E1 ∩ E2`` filtered once by `bridged_pairs`.

    This single pass is not always the meet: a pair can lose its bridge
    when the pair it relied on is itself dropped (e.g. for ``nnnn``,
    ``{13,14,23,24} ∧ {12,13,14,24,34}`` gives ``{14}``, which is not
    cotransitive).  `meet` iterates the filter instead.
    """
    common = E1 & E2
    return common & bridged_pairs(common)


def meet(E1: InversionSet, E2: InversionSet, delta: Decoration) -> InversionSet:
    """Greatest lower bound of two valid sets.

    Starting from ``E1 ∩ E2``, drop every pair that is not bridged by the
    current set and repeat until nothing changes.  The fixed point is the
    largest cotransitive subset of the intersection.
    """
    require_valid(E1, delta, "left")
    require_valid(E2, delta, "right")
    M = E1 & E2
    while True:
        nxt = M & bridged_pairs(M)
        if nxt == M:
            break
        M = nxt
    problem = check_inversion_set(M, delta)
    if problem:
        raise RuntimeError(f"meet of {E1.format()} and {E2.format()} left the family: {problem}")
    return M


def covers(E: InversionSet, delta: Decoration) -> list[tuple[tuple[int, int], InversionSet]]:
    """All inversion sets covering `E`, each with the pair that was rotated.

    Candidates are the valid closures ``tc(E + p)`` over absent pairs ``p``;
    the covers are the inclusion-minimal candidates.  Several ``p`` may
    close to the same cover; the rotated edge is the one with the largest
    first entry, then the smallest second entry.
    """
    require_valid(E, delta)
    return _covers(E, delta)


def _covers(E: InversionSet, delta: Decoration):
    n = E.n
    generated: dict[InversionSet, tuple[int, int]] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) in E:
                continue
            X = transitive_closure(E.add(i, j))
            if not is_valid_inversion_set(X, delta):
                continue
            prev = generated.get(X)
            if prev is None or (i, -j) > (prev[0], -prev[1]):
                generated[X] = (i, j)
    cands = list(generated)
    minimal = [X for X in cands if not any(Y < X for Y in cands)]
    minimal.sort(key=lambda X: X.key)
    return [(generated[X], X) for X in minimal]


def join(
    E1: InversionSet,
    E2: InversionSet,
    delta: Decoration,
    up_neighbors=None,
) -> InversionSet:
    """Least upper bound, found by climbing covers from `E1`.

    Sets containing `E2` are collected and not climbed past; every chain
    from `E1` up to the join stays below it until it arrives, so the join
    is the unique collected set contained in all others.  `up_neighbors`
    may supply precomputed covers (a callable ``E -> iterable of sets``).
    """
    require_valid(E1, delta, "left")
    require_valid(E2, delta, "right")
    if up_neighbors is None:
        def up_neighbors(X):
            return [Y for _, Y in _covers(X, delta)]

    seen = {E1}
    queue = deque([E1])
    uppers = []
    while queue:
        X = queue.popleft()
        if E2 <= X:
            uppers.append(X)
            continue
        for Y in up_neighbors(X):
            if Y not in seen:
                seen.add(Y)
                queue.append(Y)
    least = [X for X in uppers if all(X <= Y for Y in uppers)]
    if len(least) != 1:
        raise RuntimeError(
            f"no unique least upper bound for {E1.format()} and {E2.format()} in {delta.word}"
        )
    return least[0]


def meet_all(sets: Iterable[InversionSet], delta: Decoration) -> InversionSet:
    sets = list(sets)
    out = sets[0]
    for E in sets[1:]:
        out = meet(out, E, delta)
    return out


def componentwise_meet(E1: InversionSet, E2: InversionSet) -> InversionSet:
    """Plain intersection; the meet for binary trees (bracket sets)."""
    return E1 & E2


def is_bracket_set(E: InversionSet) -> bool:
    """Binary-tree bracket characterization: every component is empty or an
    initial interval ``{i+1..i+l}``, and ``j in B_i`` implies ``B_j ⊆ B_i``."""
    for i in range(1, E.n + 1):
        row = E.row(i)
        if row:
            top = row.bit_length() - 1
            if row != interval_mask(i + 1, top):
                return False
        for j in bits(row):
            if E.row(j) & ~row:
                return False
    return True


def sort_canonical(sets: Sequence[InversionSet]) -> list[InversionSet]:
    return sorted(sets, key=lambda E: E.key)
