"""Oracle that answers with garbage, for the failure-path tests."""

import sys

for line in sys.stdin:
    print("HELLO")
    sys.stdout.flush()
