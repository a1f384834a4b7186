import os
import random
import subprocess
import sys

from enrq import _pykernel
from enrq.kernel import BACKEND, madd
from enrq.ring import betti_symbol, rat


def _random_terms(rng, nvars, nterms):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-4, 4) for _ in range(nvars))
        out[e] = rat(rng.randint(-5, 5)) or rat(1)
    return out


def test_backends_agree_on_random_products():
    rng = random.Random(7)
    for nvars in (1, 2, 3, 5, 6):
        wnum = tuple(1 if i == 0 else 0 for i in range(nvars))
        for _ in range(20):
            f = _random_terms(rng, nvars, rng.randint(1, 8))
            g = _random_terms(rng, nvars, rng.randint(1, 8))
            for bn, bd, p_idx, lo, hi in ((0, 0, -1, 0, 0), (5, 1, -1, 0, 0), (0, 0, min(1, nvars - 1), -3, 3)):
                a = madd({}, f, g, wnum, bn, bd, p_idx, lo, hi)
                b = _pykernel.madd({}, f, g, wnum, bn, bd, p_idx, lo, hi)
                assert a == b


def test_symbol_coefficients_pass_through():
    b = betti_symbol(1, 2)
    f = {(1,): 2 + b}
    g = {(2,): rat(3)}
    out = madd({}, f, g, (1,), 0, 0, -1, 0, 0)
    assert out == {(3,): 6 + 3 * b}


def test_cancellation_pruned():
    f = {(0,): rat(1), (1,): rat(-1)}
    g = {(0,): rat(1), (1,): rat(1)}
    out = madd({}, f, g, (1,), 0, 0, -1, 0, 0)
    assert out == {(0,): rat(1), (2,): rat(-1)}


def test_pure_python_backend_runs_pipeline():
    env = dict(os.environ, ENRQ_KERNEL="py")
    code = (
        "from enrq.kernel import BACKEND; assert BACKEND == 'py';"
        "from enrq.enriques import pt_fiber_series;"
        "assert pt_fiber_series(4).coeff({'q': 1}) == 8"
    )
    subprocess.run([sys.executable, "-c", code], check=True, env=env)


def test_selected_backend_reported():
    assert BACKEND in ("c", "py")
