"""
Rate and sub-packetization against other schemes
================================================
"""

from cyclic_pda import compare, sweep

for row in compare(12, 2, 4):
    print(f"{row.scheme.value:>10}  rate={row.rate!s:>6}  F={row.subpacketization}  {row.reason}")

###############################################################################
# Sweep every admissible (k, L) for K = 24. Where does the new scheme fail
# to send strictly less than NT?

table = sweep(24)
for p in table.valid_points():
    new, nt = p.row("New").rate, p.row("NT").rate
    if new >= nt:
        print(f"k={p.k} L={p.L}: new {new} vs NT {nt}")

###############################################################################
# The CSV is the input for plotting.

csv_text = table.to_csv()
print(csv_text.splitlines()[0])
print(len(csv_text.splitlines()) - 1, "rows")
