import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


@pytest.mark.parametrize(
    "module",
    [
        "src.geometry",
        "src.geometry.permutohedron",
        "src.geometry.coamoeba",
        "src.geometry.mesh",
        "src.mirror",
        "src.mirror.verify",
        "src.serialization",
        "src.cli",
    ],
)
def test_module_imports_in_a_fresh_interpreter(module):
    result = subprocess.run(
        [sys.executable, "-c", f"import {module}"],
        cwd=ROOT,
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
