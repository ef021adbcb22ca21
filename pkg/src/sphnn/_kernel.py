"""Compiled inner loop of the disc descent.

Relations are coded by their index in ``TransitionMap.nodes``:
0 P, 1 Pbar, 2 PO, 3 EQ, 4 D.
"""

import math

import numpy as np
from numba import njit

SINGULAR = 1e-9
CLASSIFY_TOL = 1e-6

SATISFIED, GAVE_UP, NEEDS_PERTURBATION = 0, 1, 2
OWN_GOAL = -1


@njit(cache=True)
def classify_code(d, ra, rb, tol):
    if abs(d) <= tol and abs(ra - rb) <= tol:
        return 3
    if d + ra <= rb + tol:
        return 0
    if d + rb <= ra + tol:
        return 1
    if d >= ra + rb - tol:
        return 4
    return 2


@njit(cache=True)
def pair_geometry(C, i, j):
    n = C.shape[1]
    dot = 0.0
    for t in range(n):
        dot += C[i, t] * C[j, t]
    dot = min(1.0, max(-1.0, dot))
    ss = 0.0
    for t in range(n):
        w = C[j, t] - dot * C[i, t]
        ss += w * w
    s = math.sqrt(ss)
    return dot, s, math.atan2(s, dot)


@njit(cache=True)
def _clamp_pairs(r, frozen, eps, hi):
    m = r.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            excess = r[i] + r[j] - hi
            if excess <= 0.0:
                continue
            k = i
            if frozen[i] or (not frozen[j] and r[j] > r[i]):
                k = j
            r[k] = max(eps, r[k] - excess - 1e-12)


@njit(cache=True)
def accumulate(C, r, rows, nrows, G, gr):
    """Sum the active hinges of ``rows[:nrows]`` and their gradients.

    G receives the tangent gradient of every center row and gr the radius
    gradient.  Returns (descent loss, exact loss, stuck row or -1), where a
    row is stuck when its pair is coincident and must separate, or antipodal
    and must approach, so the distance has no usable gradient.
    """
    n = C.shape[1]
    G[:, :] = 0.0
    gr[:] = 0.0
    total = 0.0
    exact = 0.0
    stuck = -1
    for h in range(nrows):
        i = int(rows[h, 0])
        j = int(rows[h, 1])
        a = rows[h, 2]
        bi = rows[h, 3]
        bj = rows[h, 4]
        c = rows[h, 5]
        dot, s, d = pair_geometry(C, i, j)
        val = a * d + bi * r[i] + bj * r[j] + c
        exact += max(0.0, val - c + rows[h, 6])
        if val <= 0.0:
            continue
        if s < SINGULAR and a != 0.0 and ((a < 0.0 and dot > 0.0) or (a > 0.0 and dot < 0.0)):
            stuck = j
        total += val
        gr[i] += bi
        gr[j] += bj
        if a != 0.0 and s >= SINGULAR:
            coef = -a / s
            for t in range(n):
                G[i, t] += coef * (C[j, t] - dot * C[i, t])
                G[j, t] += coef * (C[i, t] - dot * C[j, t])
    return total, exact, stuck


@njit(cache=True)
def descend(C, r, frozen, plans, nrows, goals, ki, kj, lr, tol, eps, max_steps, patience, best, since, last_goal):
    """Run up to ``max_steps`` descent steps in place.

    ``plans[c, :nrows[c]]`` are the hinge rows (i, j, a, bi, bj, c, c_exact)
    used while pair (ki, kj) is in relation c.  Descent follows offset c;
    the stopping test uses c_exact, the offset without descent slack.
    ``goals[c]`` is the waypoint pursued there, or OWN_GOAL when the
    constraint's own hinge is the goal.

    Returns (code, steps, perturb_index, best, since, last_goal).
    """
    m, n = C.shape
    hi = math.pi - eps
    G = np.zeros((m, n))
    gr = np.zeros(m)
    for step in range(max_steps):
        dot, s, d = pair_geometry(C, ki, kj)
        cur = classify_code(d, r[ki], r[kj], CLASSIFY_TOL)
        goal = goals[cur]
        if goal != last_goal:
            best = np.inf
            since = 0
            last_goal = goal
        total, exact, stuck = accumulate(C, r, plans[cur], nrows[cur], G, gr)
        if goal == OWN_GOAL and exact <= tol:
            return SATISFIED, step, -1, best, since, last_goal
        if stuck >= 0:
            return NEEDS_PERTURBATION, step, stuck, best, since, last_goal
        if total > tol:
            for i in range(m):
                moved = False
                for t in range(n):
                    if G[i, t] != 0.0:
                        moved = True
                        break
                if not moved:
                    continue
                norm = 0.0
                for t in range(n):
                    C[i, t] -= lr * G[i, t]
                    norm += C[i, t] * C[i, t]
                norm = math.sqrt(norm)
                for t in range(n):
                    C[i, t] /= norm
            rmax = 0.0
            for i in range(m):
                if not frozen[i] and gr[i] != 0.0:
                    r[i] = min(hi, max(eps, r[i] - lr * gr[i]))
                rmax = max(rmax, r[i])
            if 2.0 * rmax >= hi:
                _clamp_pairs(r, frozen, eps, hi)
        if total < best - 1e-12:
            best = total
            since = 0
        else:
            since += 1
            if patience > 0 and since >= patience:
                return GAVE_UP, step + 1, -1, best, since, last_goal
    return GAVE_UP, max_steps, -1, best, since, last_goal
