#!/usr/bin/env python3

# execute all run.py files in subdirectories of this
# experiments directory

from pathlib import Path
import subprocess
import sys

exp_dir = Path(__file__).parent

for runpy in sorted(exp_dir.glob("**/run.py")):
    subprocess.check_call([sys.executable, runpy])
