"""Model updates: pointed knowledge sharing and group information resolution.

A share from sender to receiver is anchored at a state w: inside the
receiver's cell of w, the receiver's relation is intersected with the
sender's dependence relation at w (computed in the pre-update model); every
other cell and every other agent is untouched.  Resolution gives every group
member the common intersection of the group's relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .kripke import Model, ModelError, PointedModel, dep_partition


@dataclass(frozen=True)
class ShareStep:
    """One sharing act, anchored at the state where it happens."""

    sender: str
    receiver: str
    at: str


def _check_agent(m: Model, a: str) -> None:
    if a not in m.rel:
        raise ModelError("unknown agent %r" % (a,))


def share_update(m: Model, w: str, a: str, b: str) -> Model:
    """The model after sender `a` conveys their knowledge to receiver `b` at `w`."""
    if w not in m._index:
        raise ModelError("unknown state %r" % (w,))
    _check_agent(m, a)
    _check_agent(m, b)
    if a == b:
        # own dependence relation contains own cell: nothing to delete
        return m
    target = m.cell(b, w)
    pieces = []
    for klass in dep_partition(m, a, w):
        chunk = target & klass
        if chunk:
            pieces.append(chunk)
    if len(pieces) == 1:
        return m
    cells = [c for c in m.cells(b) if c != target]
    cells.extend(pieces)
    return m.replace_relations({b: cells})


def resolve_update(m: Model, group: Iterable) -> Model:
    """Every group member's relation becomes the meet of the group's relations."""
    members = tuple(dict.fromkeys(group))
    if not members:
        raise ModelError("resolution needs a non-empty group")
    for g in members:
        _check_agent(m, g)
    meet = {}
    for s in m.states:
        common = m.cell(members[0], s)
        for g in members[1:]:
            common = common & m.cell(g, s)
        meet[frozenset(common)] = None
    cells = tuple(meet)
    if all(m.cells(g) == m.cells(members[0]) for g in members) \
            and set(cells) == set(m.cells(members[0])):
        return m
    return m.replace_relations({g: cells for g in members})


def apply_sequence(pm: PointedModel, steps: Iterable) -> PointedModel:
    """Fold share updates left to right, each anchored at the point."""
    m = pm.model
    for step in steps:
        if isinstance(step, ShareStep):
            if step.at != pm.point:
                raise ModelError("step anchored at %r, point is %r"
                                 % (step.at, pm.point))
            sender, receiver = step.sender, step.receiver
        else:
            sender, receiver = step
        m = share_update(m, pm.point, sender, receiver)
    if m is pm.model:
        return pm
    return PointedModel(m, pm.point)
