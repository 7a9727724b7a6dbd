"""Build two-paper units that realise a requested (rom, mor) pair exactly."""
import math

from citenorm.ingest import COLUMNS


def two_paper_rates(rom, mor, c1=1, c2=100):
    """JCS values (e1, e2) with (c1 + c2) / (e1 + e2) == rom and
    (c1 / e1 + c2 / e2) / 2 == mor."""
    s = (c1 + c2) / rom
    a, b, c = 2 * mor, c2 - c1 - 2 * mor * s, c1 * s
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError(f"pair ({rom}, {mor}) not reachable with counts ({c1}, {c2})")
    e1 = (-b - math.sqrt(disc)) / (2 * a)
    return e1, s - e1


def pairs_csv(pairs, ids=None, c1=1, c2=100):
    lines = [",".join(COLUMNS)]
    for k, (rom, mor) in enumerate(pairs):
        uid = ids[k] if ids else f"u{k + 1}"
        e1, e2 = two_paper_rates(rom, mor, c1, c2)
        lines.append(f"{uid},1,,Article,{c1},,{e1!r},")
        lines.append(f"{uid},2,,Article,{c2},,{e2!r},")
    return "\n".join(lines) + "\n"
