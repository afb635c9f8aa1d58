# reference values for sum_{r>=1} r^z e^{-irt} = Li_{-z}(e^{-it})
import mpmath as mp
mp.mp.dps = 40
zs = [mp.mpc(-0.5, 0), mp.mpc(-0.3, 0.7), mp.mpc(-1.5, 0), mp.mpc(-2.2, 1.0), mp.mpc(0, 1.5), mp.mpc(-1, 0)]
ts = [1e-3, 0.05, 1.0, -2.0, 3.0]
for z in zs:
    for t in ts:
        v = mp.polylog(-z, mp.exp(-1j * mp.mpf(t)))
        print("{%r, %r, %r, %s, %s}," % (float(z.real), float(z.imag), t,
              mp.nstr(v.real, 20), mp.nstr(v.imag, 20)))
