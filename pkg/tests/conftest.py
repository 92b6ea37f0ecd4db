import json

import numpy as np
import pytest

from coinrep.cli import main


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def state_file(tmp_path):
    """Write a probability-triple file and return its path."""
    def make(p, name="state.json"):
        path = tmp_path / name
        doc = {
            "schema_version": 1,
            "kind": "probability-triple",
            "payload": {"p1": p[0], "p2": p[1], "p3": p[2]},
        }
        path.write_text(json.dumps(doc))
        return str(path)
    return make


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; return (exit code, stdout, stderr)."""
    def run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return run


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)
