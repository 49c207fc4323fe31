import argparse
import sys
import os
from collections import Counter

# Ensure src is in pythonpath
sys.path.append(os.path.join(os.getcwd(), 'src'))

from crepant.domain.complexes import is_full
from crepant.domain.errors import CrepantError
from crepant.domain.hyper_cones import ResolutionKind, tally
from crepant.persistence.json_io import load_records

def main():
    parser = argparse.ArgumentParser(description="Crepant Census Report")
    parser.add_argument("input_file", help="Path to a census NDJSON file (resolutions census --records)")

    args = parser.parse_args()

    print(f"Loading records from {args.input_file}...")

    try:
        records = load_records(args.input_file)
    except (OSError, CrepantError) as e:
        print(f"Error loading file: {e}")
        sys.exit(1)

    print(" CREPANT CENSUS REPORT ")

    sizes = {r.complex.n for r in records}
    counts = tally(records)

    # Metric 1: Totals
    print("\n1. Resolutions:")
    if not records:
        print(" (No records found) ")
    print(f"   - n: {', '.join(str(n) for n in sorted(sizes)) or '-'}")
    print(f"   - Total: {counts['total']}")

    # Metric 2: Projective split
    print("\n2. Projectivity:")
    print(f"   - Projective:     {counts['projective']}")
    print(f"   - Non-projective: {counts['nonprojective']}")

    # Metric 3: Full vs non-full complexes
    print("\n3. Complexes:")
    print(f"   - Full:     {counts['full']}")
    print(f"   - Non-full: {counts['nonfull']}")
    nonfull_projective = sum(
        1 for r in records if not is_full(r.complex) and r.kind is ResolutionKind.PROJECTIVE
    )
    print(f"   - Non-full and projective: {nonfull_projective}")

    # Metric 4: Maximal faces histogram
    print("\n4. Number of maximal faces:")
    histogram = Counter(len(r.complex.maximal_faces) for r in records)
    for faces, count in sorted(histogram.items()):
        print(f"   {faces:3d}: {count}")

if __name__ == "__main__":
    main()
