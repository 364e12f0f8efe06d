import os
import sys

# Ensure hardy_lib is importable when running from a source checkout
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
