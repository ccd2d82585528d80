"""
XOR delivery, byte for byte
===========================

Place a random library, broadcast one XOR per symbol and let every user peel
its file back out using only the caches it can reach.
"""

import numpy as np

from cyclic_pda import Library, check_params, construct, decode, deliver, place, simulate

K, k, L = 12, 2, 4
rng = np.random.default_rng(1)
lib = Library.random(K, K, 32, rng)
d = rng.permutation(K)

pda = construct(K, k, L)
net = place(check_params(K, k, L), lib)
txs = deliver(pda, lib, d)
print(len(txs), "transmissions")
print("Y_0 combines", txs[0].operands)

###############################################################################
# Each user recovers the file it asked for.

for alpha in range(K):
    got = decode(alpha, txs, pda, net, lib, d)
    assert np.array_equal(got, lib.file(d[alpha]))

###############################################################################
# ``simulate`` wraps all of the above and reports the measured rate.

r = simulate(36, 3, 9, 36, seed=4)
print(r.rate_measured, r.gain_histogram, r.all_decoded)

# with kL = K nothing needs to be sent
print(simulate(12, 2, 6, 12).rate_measured)
