"""Adapter between SemiGraph values and the flat-array kernel API.

Kernels index vertices 0..n-1 and links by position; positions follow
ascending link id, so lexicographic order over positions matches
lexicographic order over link ids.
"""
from __future__ import annotations

from typing import NamedTuple

from .semigraph import SemiGraph


class FlatGraph(NamedTuple):
    n: int
    eu: list[int]
    ev: list[int]
    vids: list[int]          # position -> vertex id
    vpos: dict[int, int]     # vertex id -> position
    lids: list[int]          # position -> link id
    lpos: dict[int, int]     # link id -> position


def flatten(g: SemiGraph) -> FlatGraph:
    vids = sorted(g.vertices)
    vpos = {v: i for i, v in enumerate(vids)}
    eu: list[int] = []
    ev: list[int] = []
    lids: list[int] = []
    for link in g.links():
        lids.append(link.id)
        eu.append(vpos[link.u])
        ev.append(vpos[link.v] if link.v is not None else -1)
    lpos = {lid: i for i, lid in enumerate(lids)}
    return FlatGraph(len(vids), eu, ev, vids, vpos, lids, lpos)


def active_mask(flat: FlatGraph, removed_link_ids=()) -> list[int] | None:
    """A 0/1 mask with the given link ids switched off, or None if none are."""
    if not removed_link_ids:
        return None
    mask = [1] * len(flat.lids)
    for lid in removed_link_ids:
        mask[flat.lpos[lid]] = 0
    return mask
