# %% [markdown]
# # Superpositions of Fock states and Haar-averaged fidelities
#
# An n-photon swap multiplies |n> by (-1)**(n z); the transmitted state is
# therefore compared with the phase-corrected target.  Averaging over all
# d-dimensional pure states has a closed form, checked here against Monte
# Carlo sampling.

# %%
from multiphoton import (
    NetworkConfig,
    SuperpositionState,
    average_fidelities,
    build_coupling_matrix,
    haar_average_oracle,
    propagator,
    superposition_fidelities,
    swap_time,
)

transmit = NetworkConfig(N=7, m=3, kappa=1.0, g0=0.01, j0=0.0)
reflect = transmit.replace(j0=0.1)
tau = swap_time(transmit)
M_t = propagator(build_coupling_matrix(transmit), tau)
M_r = propagator(build_coupling_matrix(reflect), tau)

psi = SuperpositionState.normalized([1, 1j, 0.5])
for label, M in (("j0=0", M_t), ("j0=0.1", M_r)):
    rep = superposition_fidelities(M, psi)
    print(f"{label:7} F_t = {rep.F_t:.6f}  F_r = {rep.F_r:.6f}")

# %% [markdown]
# In the reflecting configuration the average transmission fidelity tends
# to 1/d: only the vacuum component, of average weight 1/d, "arrives".

# %%
for d in (2, 3, 5):
    for label, M in (("j0=0", M_t), ("j0=0.1", M_r)):
        exact = average_fidelities(M, d)
        est = haar_average_oracle(M, d, samples=50_000, seed=1)
        print(
            f"d={d} {label:7} <F_t> = {exact.F_t:.5f} (MC {est.mean_F_t:.5f} +/- {est.stderr_F_t:.5f})"
            f"  <F_r> = {exact.F_r:.5f} (MC {est.mean_F_r:.5f} +/- {est.stderr_F_r:.5f})"
        )
