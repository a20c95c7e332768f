#!/usr/bin/env python3
"""Regenerate measured_ir.txt, the bundled 256-tap example response.

The file is synthetic: a direct pulse, a few early reflections, and an
exponentially decaying diffuse tail, i.e. the shape of a small-room acoustic
impulse response. Only the normalized power of the response enters the
learning dynamics, so any fixed shape works as a stand-in for a measured one;
this script pins the shape down reproducibly (stdlib RNG, fixed seed).
"""

import math
import random

TAPS = 256
SEED = 414


def main() -> None:
    rng = random.Random(SEED)
    h = [0.0] * TAPS

    # direct path and early reflections: (delay, amplitude)
    for delay, amp in [(8, 1.0), (21, -0.62), (34, 0.41), (49, -0.27), (57, 0.18)]:
        h[delay] += amp

    # diffuse tail: white noise under an exponential envelope
    for n in range(TAPS):
        h[n] += 0.35 * math.exp(-n / 55.0) * rng.gauss(0.0, 1.0)

    with open("measured_ir.txt", "w", encoding="ascii") as out:
        out.write("# synthetic 256-tap room-like impulse response\n")
        out.write("# regenerate with gen_response.py (fixed seed %d)\n" % SEED)
        for v in h:
            out.write("%.17g\n" % v)


if __name__ == "__main__":
    main()
