# coding: utf-8

# # Pfaffian identities from vacuum expectation values
#
# Wick's theorem writes a neutral fermion VEV as a Pfaffian of two-point
# functions. Comparing with the closed form from the bicharacter gives
# the Schur Pfaffian identity, and the charged fermions give the Cauchy
# determinant.

# In[1]:

import time

from twistva.bicharacter import preset
from twistva.vev import identity_ratfns, verify_identity, vev_charged, vev_neutral


# In[2]:

print(vev_neutral(preset("Bf"), 4).to_str())


# In[3]:

print(vev_charged(preset("Af"), 2).to_str())


# In[4]:

lhs, rhs = identity_ratfns("schur", 2)
print(lhs == rhs)


# Larger sizes go through polynomial identities with denominators cleared.

# In[5]:

for name, sizes in (("schur", (1, 2, 3, 4)), ("cauchy", (1, 2, 3, 4)), ("da", (1, 2, 3))):
    for n in sizes:
        t = time.perf_counter()
        ok = verify_identity(name, n)
        print(f"{name:7s} n={n}  {ok}  {time.perf_counter() - t:.2f}s")
