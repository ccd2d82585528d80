"""Brute-force PDA validator used as a differential-testing oracle.

Everything here is plain Python loops over individual entries, with no numpy
and no grouping tricks, so it shares no logic with :func:`cyclic_pda.pda.validate`
beyond the report data types.
"""

from __future__ import annotations

from .pda import STAR, Pda, StructuralError, ValidationReport, Violation


def _star_rows(grid, j):
    return {i for i in range(len(grid)) if grid[i][j] == STAR}


def _is_interval_mod(rows: set[int], F: int) -> bool:
    n = len(rows)
    if n in (0, F):
        return True
    return any(rows == {(r + x) % F for x in range(n)} for r in range(F))


def validate_oracle(p: Pda) -> ValidationReport:
    """Same report as ``validate``, computed by exhaustive scanning."""
    if not isinstance(p, Pda):
        raise StructuralError("validate_oracle expects a Pda")
    grid = [[int(x) for x in row] for row in p.entries]
    F, K = len(grid), len(grid[0])
    for row in grid:
        if len(row) != K:
            raise StructuralError("ragged grid")

    found = []

    # C3: every pair of distinct cells carrying the same integer.
    cells = [(i, j) for i in range(F) for j in range(K) if grid[i][j] != STAR]
    for x in range(len(cells)):
        i1, j1 = cells[x]
        for y in range(x + 1, len(cells)):
            i2, j2 = cells[y]
            s = grid[i1][j1]
            if grid[i2][j2] != s:
                continue
            if i1 == i2 or j1 == j2:
                found.append(Violation("C3a", symbol=s, cells=((i1, j1), (i2, j2))))
            elif grid[i1][j2] != STAR or grid[i2][j1] != STAR:
                found.append(Violation("C3b", symbol=s, cells=((i1, j1), (i2, j2))))

    # C1
    per_col = [sum(1 for i in range(F) if grid[i][j] == STAR) for j in range(K)]
    tally = {}
    for n in per_col:
        tally[n] = tally.get(n, 0) + 1
    ref = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
    uniform = True
    for j in range(K):
        if per_col[j] != ref:
            uniform = False
            found.append(Violation("C1", column=j))

    # C2
    occurrences = {}
    for i in range(F):
        for j in range(K):
            if grid[i][j] != STAR:
                occurrences[grid[i][j]] = occurrences.get(grid[i][j], 0) + 1
    if not occurrences:
        found.append(Violation("C2"))
    else:
        s = 0
        while s <= max(occurrences):
            if s not in occurrences:
                found.append(Violation("C2", symbol=s))
            s += 1

    is_pda = len(found) == 0

    consecutive = True
    for j in range(K):
        if not _is_interval_mod(_star_rows(grid, j), F):
            consecutive = False
            found.append(Violation("cyclicity", column=j))

    counts = set(occurrences.values())
    regular_g = counts.pop() if is_pda and len(counts) == 1 else None

    cyclic_t = None
    if regular_g is not None and consecutive:
        for t in range(1, F):
            ok = all(
                (grid[i][j] == STAR) == (grid[(i - t) % F][j - 1] == STAR)
                for j in range(1, K)
                for i in range(F)
            )
            if ok:
                cyclic_t = t
                break

    return ValidationReport(
        F=F,
        K=K,
        is_pda=is_pda,
        Z=ref if uniform else None,
        S=len(occurrences),
        regular_g=regular_g,
        cyclic_t=cyclic_t,
        violations=tuple(sorted(found, key=Violation.sort_key)),
    )
