"""
Command line
============

Everything above is also available from the ``trimode`` command. This
script drives it through ``subprocess`` so the output can be inspected.
"""

import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    out = subprocess.run([sys.executable, "-m", "trimode", *args],
                         capture_output=True, text=True)
    print("$ trimode", " ".join(args), f"  (exit {out.returncode})")
    print(out.stdout[:800] or out.stderr)


##############################################################################
# Parameters come from a TOML file and can be overridden with ``--set``.

cfg = Path(tempfile.mkdtemp()) / "run.toml"
cfg.write_text("""\
[params]
omega_m2 = 1.9858
delta = -13.22
kappa = 0.02
g = 2e-4
G = 0.3
gamma = 2e-6
""")

run("spectrum", "--config", str(cfg))
run("resonance", "--config", str(cfg), "--grid-delta", "5:20:4")
run("check")

##############################################################################
# Invalid input exits with status 2.

run("spectrum", "--set", "kappa=-1")
