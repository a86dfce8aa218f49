"""Pure-numpy event walk, used when the compiled kernel is unavailable.

Both backends consume the same prepared arrays: plate positions, interior
segment boundaries (strictly inside the fiber), and per-segment phase rates.
Each stretch between consecutive events contributes its exactly integrated
field rotation and its linear share of the segment phase, weighted by the
toggling sign (-1 per plate passed so far).
"""

from __future__ import annotations

import math

import numpy as np


def walk(plates, inner, rates, coef, k, phi0, length):
    """Return (toggled_signal, toggled_total, pulse_count) for one pass."""
    mid = np.sort(np.concatenate((plates, inner)))
    pts = np.empty(mid.size + 2)
    pts[0] = 0.0
    pts[1:-1] = mid
    pts[-1] = length
    cosv = np.cos(k * pts + phi0)
    dalpha = coef * (cosv[:-1] - cosv[1:])
    left = pts[:-1]
    lens = np.diff(pts)
    sign = 1.0 - 2.0 * (np.searchsorted(plates, left, side="right") % 2)
    seg = np.searchsorted(inner, left, side="right")
    t_sig = float(np.sum(sign * dalpha))
    t_noise = float(np.sum(sign * (rates[seg] * lens)))
    return t_sig, t_sig + t_noise, int(plates.size)


def walk_trajectory(plates, inner, rates, coef, k, phi0, length, step):
    """Event walk with sub-stretch sampling of the running toggled signal.

    Returns (toggled_signal, toggled_total, pulse_count, trajectory) where the
    trajectory lists (position, toggled_signal) at every sub-step boundary,
    starting at (0.0, 0.0) and ending exactly at the fiber length.
    """
    traj_pos = [0.0]
    traj_tog = [0.0]
    t_sig = 0.0
    t_noise = 0.0
    s = 1.0
    parity = 0
    ip = 0
    ib = 0
    x = 0.0
    n_plates = plates.size
    n_inner = inner.size
    while x < length:
        nxt = length
        if ib < n_inner and inner[ib] < nxt:
            nxt = float(inner[ib])
        if ip < n_plates and plates[ip] < nxt:
            nxt = float(plates[ip])
        if nxt > x:
            nsub = max(1, int(math.ceil((nxt - x) / step - 1e-9)))
            xs = np.linspace(x, nxt, nsub + 1)
            cosv = np.cos(k * xs + phi0)
            rate = float(rates[ib])
            for j in range(nsub):
                t_sig += s * (coef * (float(cosv[j]) - float(cosv[j + 1])))
                t_noise += s * (rate * (float(xs[j + 1]) - float(xs[j])))
                traj_pos.append(float(xs[j + 1]))
                traj_tog.append(t_sig)
            x = nxt
        while ip < n_plates and plates[ip] <= x:
            s = -s
            parity += 1
            ip += 1
        while ib < n_inner and inner[ib] <= x:
            ib += 1
    trajectory = list(zip(traj_pos, traj_tog))
    return t_sig, t_sig + t_noise, parity, trajectory
