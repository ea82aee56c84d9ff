"""External oracle for the tests: index 0 is sqrt(2), index 1 is the cube root of 3.

Speaks the line protocol ``REFINE <index> <p>`` -> ``BALL <re> <im> <radius>``.
Built only from integer square/cube roots, independently of the package.
"""

import sys
from math import isqrt


def icbrt(n):
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x ** 3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def main():
    for line in sys.stdin:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "REFINE":
            print("ERROR")
            sys.stdout.flush()
            continue
        idx, p = int(parts[1]), int(parts[2])
        if idx == 0:
            m = isqrt(2 << (2 * p))
        elif idx == 1:
            m = icbrt(3 << (3 * p))
        else:
            print("BALL 0 0 -1")
            sys.stdout.flush()
            continue
        # m / 2^p <= value < (m + 1) / 2^p; centre at m + 1/2 with radius 2^-(p+1)
        den = 1 << (p + 1)
        print(f"BALL {2 * m + 1}/{den} 0 1/{den}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
