"""Piecewise-linear computation graph for the sparsification loss.

The loss ``v_J -> d̂(I, J)`` is built from a handful of node kinds: inputs,
constants, add, subtract, negate, abs, max2, min2, plus the row/column
min-reductions and the final max-reductions, which are folds of min2/max2.
Each node holds an array; the full-domain coordinates broadcast as ``(n, 1)``
columns and the sparse-domain coordinates as ``(1, m)`` rows, so one node
evaluates a whole slice of the ε-matrix at once.

Ties go to the lowest-index child (first operand of max2/min2, first index
of a reduction). ``abs`` takes slope +1 at zero. The gated terms
``δ(x, y)|y - x|`` are written as ``max(0, y - x)``, so at a perfect cover
every gate ties and the subgradient is exactly zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intervals import Domain

ELEMENTWISE = {"add", "subtract", "negate", "abs", "max2", "min2"}
REDUCTIONS = {"min_rows", "min_cols", "max_all"}
SLOTS = "xyabcd"


@dataclass
class PLNode:
    op: str
    children: tuple = ()
    value: object = None  # constants and input slot index
    label: str = ""


class PLGraph:
    """Graph template with fixed full-domain constants and 6 input rows."""

    def __init__(self):
        self.nodes: list[PLNode] = []
        self.inputs: list[int] = []
        self.output: int | None = None
        self.m: int | None = None

    def _add(self, op, *children, value=None, label=""):
        self.nodes.append(PLNode(op, tuple(children), value, label))
        return len(self.nodes) - 1

    def input(self, slot, label=""):
        k = self._add("input", value=slot, label=label)
        self.inputs.append(k)
        return k

    def constant(self, value, label=""):
        return self._add("constant", value=np.asarray(value, dtype=float), label=label)

    def add(self, a, b):
        return self._add("add", a, b)

    def sub(self, a, b):
        return self._add("subtract", a, b)

    def neg(self, a):
        return self._add("negate", a)

    def abs(self, a):
        return self._add("abs", a)

    def max2(self, a, b):
        return self._add("max2", a, b)

    def min2(self, a, b):
        return self._add("min2", a, b)

    # -- evaluation ---------------------------------------------------------

    def forward(self, J: np.ndarray):
        """Forward pass; returns per-call scratch (values, choices)."""
        J = np.asarray(J, dtype=float).reshape(-1, 6)
        if self.m is not None and len(J) != self.m:
            raise ValueError(f"graph was built for m={self.m}, got {len(J)} intervals")
        vals: list = [None] * len(self.nodes)
        choice: list = [None] * len(self.nodes)
        for k, node in enumerate(self.nodes):
            op, ch = node.op, node.children
            if op == "input":
                vals[k] = J[None, :, node.value]
            elif op == "constant":
                vals[k] = node.value
            elif op == "add":
                vals[k] = vals[ch[0]] + vals[ch[1]]
            elif op == "subtract":
                vals[k] = vals[ch[0]] - vals[ch[1]]
            elif op == "negate":
                vals[k] = -vals[ch[0]]
            elif op == "abs":
                vals[k] = np.abs(vals[ch[0]])
                choice[k] = vals[ch[0]] >= 0
            elif op in ("max2", "min2"):
                a, b = vals[ch[0]], vals[ch[1]]
                first = a >= b if op == "max2" else a <= b
                vals[k] = np.where(first, a, b)
                choice[k] = first
            elif op == "min_rows":
                x = vals[ch[0]]
                idx = np.argmin(x, axis=1)
                vals[k] = x[np.arange(x.shape[0]), idx]
                choice[k] = idx
            elif op == "min_cols":
                x = vals[ch[0]]
                idx = np.argmin(x, axis=0)
                vals[k] = x[idx, np.arange(x.shape[1])]
                choice[k] = idx
            elif op == "max_all":
                x = vals[ch[0]]
                idx = int(np.argmax(x))
                vals[k] = x[idx]
                choice[k] = idx
            else:
                raise ValueError(f"unknown node kind {op!r}")
        return vals, choice

    def backward(self, vals, choice) -> np.ndarray:
        """Subgradient of the output with respect to the (m, 6) inputs."""
        adj: list = [None] * len(self.nodes)
        adj[self.output] = np.ones_like(vals[self.output], dtype=float)
        m = vals[self.inputs[0]].shape[1]
        grad = np.zeros((m, 6))

        def push(child, g):
            shape = np.shape(vals[child])
            g = _unbroadcast(g, shape)
            adj[child] = g if adj[child] is None else adj[child] + g

        for k in range(len(self.nodes) - 1, -1, -1):
            g = adj[k]
            if g is None:
                continue
            node = self.nodes[k]
            op, ch = node.op, node.children
            if op == "input":
                grad[:, node.value] += np.asarray(g).reshape(-1)
            elif op == "constant":
                pass
            elif op == "add":
                push(ch[0], g)
                push(ch[1], g)
            elif op == "subtract":
                push(ch[0], g)
                push(ch[1], -g)
            elif op == "negate":
                push(ch[0], -g)
            elif op == "abs":
                push(ch[0], np.where(choice[k], g, -g))
            elif op in ("max2", "min2"):
                first = choice[k]
                push(ch[0], np.where(first, g, 0.0))
                push(ch[1], np.where(first, 0.0, g))
            elif op == "min_rows":
                x = vals[ch[0]]
                gx = np.zeros_like(x)
                gx[np.arange(x.shape[0]), choice[k]] = g
                push(ch[0], gx)
            elif op == "min_cols":
                x = vals[ch[0]]
                gx = np.zeros_like(x)
                gx[choice[k], np.arange(x.shape[1])] = g
                push(ch[0], gx)
            elif op == "max_all":
                x = vals[ch[0]]
                gx = np.zeros_like(x)
                gx[choice[k]] = g
                push(ch[0], gx)
        return grad

    def forward_backward(self, vJ):
        """Loss and a subgradient (flattened to length 6m) at ``vJ``."""
        vals, choice = self.forward(vJ)
        loss = float(vals[self.output])
        return loss, self.backward(vals, choice).reshape(-1)

    def kink_margin(self, vJ) -> float:
        """Smallest gap between competing operands of any max/min at ``vJ``.

        Exact ties between two zeros are skipped: they only occur where both
        operands are already clamped by a gate whose own gap is counted. So is
        a tie at the output when the row and column reductions land on the same
        ε entry, as they always do for a 1x1 matrix.
        A large margin means the loss is affine in a neighbourhood of ``vJ``.
        """
        vals, choice = self.forward(vJ)
        gaps = [np.inf]
        for k, node in enumerate(self.nodes):
            op, ch = node.op, node.children
            if k == self.output and self._same_entry(choice):
                continue
            if op in ("max2", "min2"):
                a, b = np.broadcast_arrays(vals[ch[0]], vals[ch[1]])
                live = ~((a == 0) & (b == 0))
                if live.any():
                    gaps.append(np.abs(a - b)[live].min())
            elif op in ("min_rows", "min_cols", "max_all"):
                x = vals[ch[0]]
                axis = 1 if op == "min_rows" else 0
                if x.shape[axis] > 1:
                    s = np.sort(x, axis=axis)
                    gaps.append(np.abs(np.diff(np.take(s, [0, 1] if op != "max_all" else [-2, -1],
                                                       axis=axis), axis=axis)).min())
        return float(min(gaps))

    def _same_entry(self, choice) -> bool:
        max_r, max_s = self.nodes[self.output].children
        rows, cols = self.nodes[max_r].children[0], self.nodes[max_s].children[0]
        r, s = choice[max_r], choice[max_s]
        return (r, int(choice[rows][r])) == (int(choice[cols][s]), s)

    def element_count(self, m: int) -> int:
        """Total number of scalar entries across all nodes for m sparse intervals."""
        vals, _ = self.forward(np.ones((m, 6)))
        return int(sum(np.size(v) for v in vals))

    def active_path_dot(self, vJ) -> str:
        """DOT text of the chain of active (node, index) pairs from the output."""
        vals, choice = self.forward(vJ)
        lines = ["digraph active_path {", "  rankdir=TB;"]
        stack = [(self.output, ())]
        seen = set()
        while stack:
            k, idx = stack.pop()
            if (k, idx) in seen:
                continue
            seen.add((k, idx))
            node = self.nodes[k]
            v = vals[k][idx] if np.ndim(vals[k]) else vals[k]
            name = f"n{k}_{'_'.join(map(str, idx))}"
            desc = node.label or node.op
            if node.op == "input":
                desc = f"J[{idx[1]}].{SLOTS[node.value]}"
            elif node.op == "constant":
                desc = f"{node.label or 'const'}[{idx[0] if idx else ''}]"
            lines.append(f'  {name} [label="{desc} {list(idx)} = {float(v):.6g}"];')
            for c, cidx in self._active_children(k, idx, vals, choice):
                cname = f"n{c}_{'_'.join(map(str, cidx))}"
                lines.append(f"  {name} -> {cname};")
                stack.append((c, cidx))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _active_children(self, k, idx, vals, choice):
        node = self.nodes[k]
        op, ch = node.op, node.children

        def clip(c, idx):
            shape = np.shape(vals[c])
            return tuple(0 if s == 1 else i for i, s in zip(idx, shape)) if shape else ()

        if op in ("input", "constant"):
            return []
        if op in ("max2", "min2"):
            first = bool(choice[k][idx]) if np.ndim(choice[k]) else bool(choice[k])
            c = ch[0] if first else ch[1]
            return [(c, clip(c, idx))]
        if op == "min_rows":
            return [(ch[0], (idx[0], int(choice[k][idx[0]])))]
        if op == "min_cols":
            return [(ch[0], (int(choice[k][idx[0]]), idx[0]))]
        if op == "max_all":
            return [(ch[0], (int(choice[k]),))]
        return [(c, clip(c, idx)) for c in ch]


def _unbroadcast(g, shape):
    g = np.asarray(g, dtype=float)
    if g.shape == tuple(shape):
        return g
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for ax, s in enumerate(shape):
        if s == 1 and g.shape[ax] != 1:
            g = g.sum(axis=ax, keepdims=True)
    return g


def _pos(G: PLGraph, lo, hi):
    """δ(lo, hi)|hi - lo| as max(0, hi - lo); the constant comes first so an
    exact tie contributes no slope."""
    return G.max2(G._zero, G.sub(hi, lo))


def _F(G, w1, w2, w3, w4):
    return G.max2(_pos(G, w1, w2), _pos(G, w3, w4))


def _H(G, o1, o2, o3, o4):
    return G.max2(G.min2(o1, o2), G.min2(o3, o4))


def build_loss_graph(full: Domain, m: int | None = None) -> PLGraph:
    """Graph computing d̂(full, J) from the 6m coordinates of J."""
    if not full.is_vec6:
        raise ValueError("the full domain must consist of 6-vector intervals")
    U = full.vectors()
    G = PLGraph()
    G.m = m
    G._zero = G.constant(0.0, label="zero")
    x1, y1, a, b, c, d = (G.constant(U[:, k, None], label=f"I.{SLOTS[k]}") for k in range(6))
    x2, y2, e, f, g, h = (G.input(k, label=f"J.{SLOTS[k]}") for k in range(6))

    x1b, y1c, x1d, y1a = G.sub(x1, b), G.sub(y1, c), G.add(x1, d), G.add(y1, a)
    x2f, y2g, x2h, y2e = G.sub(x2, f), G.sub(y2, g), G.add(x2, h), G.add(y2, e)

    t1 = _H(G, _F(G, x2f, x1b, y2, y1), _F(G, x2f, x1, y2, y1c),
            _F(G, x2, x1b, y2g, y1), _F(G, x2, x1, y2g, y1c))
    t2 = _F(G, x1d, x2h, y1a, y2e)
    t3 = _H(G, _F(G, x1b, x2f, y1, y2), _F(G, x1b, x2, y1, y2g),
            _F(G, x1, x2f, y1c, y2), _F(G, x1, x2, y1c, y2g))
    t4 = _F(G, x2h, x1d, y2e, y1a)
    eps = G.max2(G.max2(t1, t2), G.max2(t3, t4))
    G.nodes[eps].label = "eps"

    rows = G._add("min_rows", eps, label="row_min")
    cols = G._add("min_cols", eps, label="col_min")
    G.output = G.max2(G._add("max_all", rows, label="max_r"), G._add("max_all", cols, label="max_s"))
    G.nodes[G.output].label = "dhat"
    return G


def forward_backward(graph: PLGraph, vJ):
    return graph.forward_backward(vJ)


def reparam_nonneg(raw):
    """ReLU on the a, b, c, d slots. Returns (vector, derivative mask); the
    derivative is 1 at exactly zero."""
    raw = np.asarray(raw, dtype=float).reshape(-1, 6)
    out = raw.copy()
    out[:, 2:] = np.maximum(raw[:, 2:], 0.0)
    jac = np.ones_like(raw)
    jac[:, 2:] = (raw[:, 2:] >= 0).astype(float)
    return out.reshape(-1), jac.reshape(-1)
