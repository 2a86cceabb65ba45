#!/usr/bin/env python3
"""
Run the simulator from a checkout without installing it.

Example:
    python scripts/mas_sim.py run data/scenarios/fig4_first_order.json --out data/results/fig4
"""
import sys
from pathlib import Path

# Add the project root to the import path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
