import json
import os
import subprocess
import sys

from jmorph import _accel, _kernels

SCRIPT = r"""
import json
from jmorph import _accel
from jmorph.lexicon import seed_lexicon
from jmorph.verbs import compile_grammar
g = compile_grammar(seed_lexicon())
print(json.dumps({
    "numba": _accel.USE_NUMBA,
    "gen": g.generate("飲む", ["te", "prog"]),
    "ana": [str(a) for a in g.analyze("見られない")],
    "states": g.generator.n_states,
}, ensure_ascii=False))
"""


def _run(disable):
    env = dict(os.environ, JMORPH_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, env=env, check=True)
    return json.loads(res.stdout)


def test_fallback_matches_jit():
    jit, plain = _run(False), _run(True)
    assert plain["numba"] is False
    assert {k: v for k, v in jit.items() if k != "numba"} == {k: v for k, v in plain.items() if k != "numba"}
    assert plain["gen"] == ["飲んでいる", "飲んでる"]


def test_py_func_unwraps():
    body = _accel.py_func(_kernels.lower_bound)
    assert body(__import__("numpy").array([1, 3, 5]), 0, 3, 4) == 2
