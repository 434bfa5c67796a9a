"""Pure-Python kernels.  Reference semantics for ``_ckernels.pyx``."""

import numpy as np


def search_colorings(ins, overs, outs, fwd, bwd, arc_count, ncolors, count_only=False):
    """Backtracking search for arc colourings with per-crossing tables.

    Crossing ``c`` imposes ``col[outs[c]] == fwd[c, col[ins[c]], col[overs[c]]]``;
    ``bwd[c, out, over]`` must give the matching incoming colour so the rule
    can also be propagated backwards along the under-strand.

    The lowest unassigned arc is branched on, colours in increasing order, so
    solutions come out in lexicographic order.

    Returns
    -------
    count : int
    solutions : ndarray of shape (count, arc_count), or None if ``count_only``
    """
    ins = [int(v) for v in ins]
    overs = [int(v) for v in overs]
    outs = [int(v) for v in outs]
    fwd = np.asarray(fwd).tolist()
    bwd = np.asarray(bwd).tolist()
    incident = [[] for _ in range(arc_count)]
    for c in range(len(ins)):
        for a in {ins[c], overs[c], outs[c]}:
            incident[a].append(c)

    assign = [-1] * arc_count
    trail = []
    solutions = []
    count = 0

    def assign_and_propagate(arc, value):
        assign[arc] = value
        trail.append(arc)
        queue = [arc]
        while queue:
            cur = queue.pop()
            for c in incident[cur]:
                i, o, u = ins[c], overs[c], outs[c]
                vo = assign[o]
                if vo < 0:
                    continue
                vi, vu = assign[i], assign[u]
                if vi >= 0:
                    w = fwd[c][vi][vo]
                    if vu < 0:
                        assign[u] = w
                        trail.append(u)
                        queue.append(u)
                    elif vu != w:
                        return False
                elif vu >= 0:
                    assign[i] = bwd[c][vu][vo]
                    trail.append(i)
                    queue.append(i)
        return True

    def undo(mark):
        while len(trail) > mark:
            assign[trail.pop()] = -1

    def descend(start):
        nonlocal count
        a = start
        while a < arc_count and assign[a] >= 0:
            a += 1
        if a == arc_count:
            count += 1
            if not count_only:
                solutions.append(list(assign))
            return
        for v in range(ncolors):
            mark = len(trail)
            if assign_and_propagate(a, v):
                descend(a + 1)
            undo(mark)

    descend(0)
    if count_only:
        return count, None
    return count, np.array(solutions, dtype=np.int64).reshape(count, arc_count)


def rref_mod_p(A, p):
    """Reduced row echelon form over ``Z/p`` (``p`` prime).

    Returns ``(R, pivots)`` where ``pivots[k]`` is the pivot column of row
    ``k``.  Pivot rows are scaled to a leading 1.
    """
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots
