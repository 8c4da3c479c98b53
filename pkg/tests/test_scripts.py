"""The experiment scripts run and report success."""

import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "script, args",
    [
        ("run_verification.py", ["--mod-hi", "4", "--names", "trefoil", "trefoil-hopf"]),
        ("torus_whitehead_projection.py", ["--mod-hi", "9"]),
    ],
)
def test_script_exits_zero(script, args):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / script), *args], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
