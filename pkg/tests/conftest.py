import sys
from pathlib import Path

# make sibling helper modules (golden_scripts) importable regardless of cwd
sys.path.insert(0, str(Path(__file__).parent))
