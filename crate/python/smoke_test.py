"""Smoke test for the nakayama extension module.

Build first:
    cargo build -p nakayama-py --features extension-module --release
    cp target/release/libnakayama.so python/nakayama.so
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import nakayama  # noqa: E402


def main():
    assert len(nakayama.enumerate_triangulations(3)) == 10
    configs = nakayama.enumerate_sms(3, 6)
    assert len(configs) == 20
    assert all(nakayama.is_config(c) for c in configs)
    assert len(nakayama.enumerate_sms(3, 3)) == 5

    complexes = nakayama.two_term_tilting(3, 6)
    images = {nakayama.fmap(t) for t in complexes}
    assert images == set(configs)

    x = nakayama.enumerate_triangulations(3)[0]
    t = nakayama.phi(x, 3, 6)
    assert nakayama.fmap(t) in images

    simples = json.dumps({"n": 3, "ell": 6, "points": [[1, 1], [2, 1], [3, 1]]})
    assert nakayama.prune_type(simples) == "bottom"
    moved = nakayama.sms_mutate(simples, [(1, 1)], "minus")
    assert nakayama.is_config(moved)

    q = json.loads(nakayama.exchange_quiver("sms", 3, 6))
    assert len(q["objects"]) == 20

    for suite in ["counts", "bijection", "mutation-compat", "confluence"]:
        report = json.loads(nakayama.verify(suite, 3, 6))
        assert report["status"] == "pass", report
    assert json.loads(nakayama.verify("bijection", 3, 3))["status"] == "fail-as-expected"

    try:
        nakayama.verify("nope", 3, 6)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
