"""Bitset coverage kernels: "does some tuple of candidates cover a target set".

Masks record, per candidate, which target vertices its radius-r ball misses.
A t-tuple covers the target iff the AND of its masks is zero; the search is a
meet-in-the-middle over half-tuples with word-parallel AND, which realizes
the rectangular boolean products the deciders need without any fast
matrix-multiplication machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError
from .graphs import DistRow, VertexSet

_LEFT_CHUNK = 512


@dataclass(frozen=True)
class UncoveredRow:
    """Bit j set iff the candidate's radius-r ball misses target Z[j]."""

    candidate: int
    mask: int


def uncovered_mask(
    dist_rows: Sequence[DistRow], Z: Sequence[int], r: int
) -> list[UncoveredRow]:
    """One mask per candidate row, bit order following Z. UNREACHABLE is uncovered."""
    zidx = np.asarray(list(Z), dtype=np.int64)
    out = []
    for row in dist_rows:
        if zidx.size == 0:
            out.append(UncoveredRow(row.source, 0))
            continue
        bits = row.dist[zidx] > r
        packed = np.packbits(bits, bitorder="little").tobytes()
        out.append(UncoveredRow(row.source, int.from_bytes(packed, "little")))
    return out


def uncovered_mask_transposed(
    target_rows: Sequence[DistRow], candidates: Sequence[int], r: int
) -> list[UncoveredRow]:
    """Masks for ``candidates`` against targets given by *their* distance rows.

    Row j belongs to target z_j; candidate v misses z_j iff d(z_j, v) > r
    (distances are symmetric). Avoids running one traversal per candidate.
    """
    cand = list(candidates)
    if not target_rows:
        return [UncoveredRow(v, 0) for v in cand]
    bits = np.stack([row.dist > r for row in target_rows])  # (|Z|, n)
    packed = np.packbits(bits[:, cand].T, axis=1, bitorder="little")
    return [
        UncoveredRow(v, int.from_bytes(packed[i].tobytes(), "little"))
        for i, v in enumerate(cand)
    ]


def _pack_group(group: Sequence[UncoveredRow], nwords: int) -> np.ndarray:
    out = np.empty((len(group), nwords), dtype=np.uint64)
    nbytes = nwords * 8
    for i, row in enumerate(group):
        out[i] = np.frombuffer(row.mask.to_bytes(nbytes, "little"), dtype=np.uint64)
    return out


def _product_fold(packed: list[np.ndarray]) -> np.ndarray:
    """AND-combine groups into all tuples, rows in row-major product order."""
    acc = packed[0]
    for nxt in packed[1:]:
        w = acc.shape[1]
        acc = (acc[:, None, :] & nxt[None, :, :]).reshape(-1, w)
    return acc


def _unravel(flat: int, sizes: Sequence[int]) -> list[int]:
    idx = []
    for size in reversed(sizes):
        idx.append(flat % size)
        flat //= size
    return idx[::-1]


def exists_cover_tuple(
    groups: Sequence[Sequence[UncoveredRow]],
    arity: int | None = None,
    budget: int | None = None,
) -> tuple[int, ...] | None:
    """First t-tuple (one candidate per group) whose masks AND to zero, or None.

    ``groups`` is either one group per tuple position, or a single group with
    ``arity`` giving the tuple length (the group is reused for every
    position). Enumeration order is the row-major product of the groups as
    given; the first hit in that order is returned. Refuses when either
    half-product exceeds ``budget``.
    """
    if groups and isinstance(groups[0], UncoveredRow):
        if arity is None:
            raise ValueError("arity required when passing a single group")
        groups = [groups] * arity  # type: ignore[list-item]
    t = len(groups)
    if arity is not None and arity != t:
        raise ValueError(f"arity {arity} does not match {t} groups")
    if t < 1:
        raise ValueError("arity must be >= 1")
    if any(len(grp) == 0 for grp in groups):
        return None

    max_bits = max((row.mask.bit_length() for grp in groups for row in grp), default=0)
    nwords = max(1, (max_bits + 63) // 64)

    if t == 1:
        for row in groups[0]:
            if row.mask == 0:
                return (row.candidate,)
        return None

    h = (t + 1) // 2  # first ceil(t/2) positions form the left half
    left_groups, right_groups = list(groups[:h]), list(groups[h:])
    left_sizes = [len(grp) for grp in left_groups]
    right_sizes = [len(grp) for grp in right_groups]
    if budget is not None:
        if prod(left_sizes) > budget or prod(right_sizes) > budget:
            raise BudgetExceededError(
                f"half-tuple enumeration {prod(left_sizes)}x{prod(right_sizes)} "
                f"exceeds budget {budget}"
            )

    lefts = _product_fold([_pack_group(grp, nwords) for grp in left_groups])
    rights = _product_fold([_pack_group(grp, nwords) for grp in right_groups])

    n_right = rights.shape[0]
    for lo in range(0, lefts.shape[0], _LEFT_CHUNK):
        chunk = lefts[lo : lo + _LEFT_CHUNK]
        # (chunk, n_right): True where some word of the AND is nonzero
        misses = (chunk[:, None, :] & rights[None, :, :]).any(axis=2)
        if misses.all():
            continue
        flat = int(np.argmin(misses))  # first False in row-major order
        li, ri = lo + flat // n_right, flat % n_right
        lidx = _unravel(li, left_sizes)
        ridx = _unravel(ri, right_sizes)
        return tuple(
            [left_groups[p][i].candidate for p, i in enumerate(lidx)]
            + [right_groups[p][i].candidate for p, i in enumerate(ridx)]
        )
    return None


def intersect_balls(n: int, dist_rows: Sequence[DistRow], r: int) -> VertexSet:
    """{v : d(t, v) <= r for every row t}; empty row list yields all of V."""
    if not dist_rows:
        return VertexSet.full(n)
    inside = np.ones(n, dtype=bool)
    for row in dist_rows:
        inside &= row.dist <= r
    return VertexSet.from_bool(inside)
