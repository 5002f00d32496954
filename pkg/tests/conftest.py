import sys
from pathlib import Path

# make the oracle module importable without packaging the tests
sys.path.insert(0, str(Path(__file__).parent))
