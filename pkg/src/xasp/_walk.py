"""Traversal helpers shared by derivation-path checking and graph construction.

A *selection* assigns one support set to each literal reachable from a root.
Rather than materialising the full cartesian product of per-literal choices,
selections are enumerated lazily: a walk runs against a partial selection and
stops at the first literal whose choice is still open, which then becomes a
branch point. Every complete walk corresponds to exactly the choices it
consulted, so the distinct outcomes are the same as for the full product.
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping

from .errors import IntegrityError, SelectionCapWarning
from .program import Lit
from .support import Marker

DEFAULT_SELECTION_CAP = 10_000


def is_negative(node) -> bool:
    return isinstance(node, Lit) and not node.positive


def get_connection(seed, table, local: dict) -> dict:
    """Copy into ``local`` the table entries of every literal reachable from ``seed``.

    Literals already present in ``local`` are not revisited; markers are terminal.
    """
    stack = [seed]
    while stack:
        for e in stack.pop().children():
            if isinstance(e, Marker) or e in local:
                continue
            if e not in table:
                raise IntegrityError(f"literal {e} has no support table entry")
            local[e] = table[e]
            stack.extend(reversed(table[e]))
    return local


def cycle_identification(active_edge: Mapping, s, e) -> bool:
    """Follow ``active_edge`` from ``s``; true iff ``e`` is reached through negative nodes only."""
    steps = 0
    while steps <= len(active_edge):
        if s not in active_edge:
            return False
        v = active_edge[s]
        if not (is_negative(s) and is_negative(v)):
            return False
        if v == e:
            return True
        s = v
        steps += 1
    return False


def has_positive_cycle(edges) -> bool:
    """True iff some positive literal lies on a directed cycle of ``edges``."""
    succ: dict = {}
    for src, dst in edges:
        if src == dst and isinstance(src, Lit) and src.positive:
            return True
        succ.setdefault(src, []).append(dst)
    for comp in strongly_connected_components(succ):
        if len(comp) > 1 and any(isinstance(n, Lit) and n.positive for n in comp):
            return True
    return False


def strongly_connected_components(succ: Mapping) -> list:
    """Tarjan's algorithm, iterative."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps = []
    counter = 0
    nodes = list(succ)
    for targets in succ.values():
        nodes.extend(targets)
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)
    return comps


class _Undecided(Exception):
    def __init__(self, key):
        super().__init__(key)
        self.key = key


class LazySelection(Mapping):
    """Selection view that raises on first access to a literal without a choice yet."""

    def __init__(self, local: Mapping, chosen: dict):
        self.local = local
        self.chosen = chosen

    def __contains__(self, key):
        return key in self.local

    def __getitem__(self, key):
        try:
            return self.chosen[key]
        except KeyError:
            if key in self.local:
                raise _Undecided(key) from None
            raise

    def __iter__(self):
        return iter(self.local)

    def __len__(self):
        return len(self.local)


def iter_selections(root, seed, local: Mapping, run, cap: int = DEFAULT_SELECTION_CAP):
    """Yield ``(choices, run(selection))`` for each complete selection rooted at ``root``.

    Choice points are explored depth-first with options in table order. At most
    ``cap`` complete walks are performed; hitting the cap emits a warning.
    """
    pending = [{root: seed}]
    done = 0
    while pending:
        chosen = pending.pop()
        try:
            result = run(LazySelection(local, chosen))
        except _Undecided as exc:
            options = local[exc.key]
            pending.extend({**chosen, exc.key: opt} for opt in reversed(options))
            continue
        done += 1
        yield chosen, result
        if done >= cap and pending:
            warnings.warn(f"selection enumeration from {root} truncated after {cap} walks",
                          SelectionCapWarning, stacklevel=2)
            return
