"""Independent high-precision oracle for the frozen expected values in the C++ tests.

Evaluates the closed forms with mpmath (50 digits), locates optima by brute-force
golden-section / dense scans, and brute-forces the chain variance by explicit
2x2 products.  Nothing here imports or calls the C++ library.
"""
import mpmath as mp

mp.mp.dps = 50

GX = mp.mpf("0.85e-5")
GS = GX / 2
ETA = mp.mpf("0.9")
R10 = mp.log(10) / 2          # 10 dB
R40 = mp.log(mp.mpf(10) ** 4) / 2  # 40 dB


def eps(eta):
    return mp.sqrt((1 - eta) / eta)


def dns2_coherent(n, gx, gs, eta):
    return (1 / gx**2) * (1 / (4 * eta * n) + (1 - eta) * n * gs**2)


def dns2_squeezed(n, gx, gs, eta, r, R):
    e2 = eps(eta) ** 2
    return (1 / gx**2) * ((mp.e ** (-2 * r) + e2 * mp.e ** (-2 * R)) / (4 * n)
                          + n * gs**2 * e2 / (mp.e ** (2 * R) + e2 * mp.e ** (2 * r)))


def np_opt(gs, eta, r, R):
    e = eps(eta)
    return (mp.e ** (R - r) + e**2 * mp.e ** (r - R)) / (2 * gs * e)


def golden(f, a, b, iters=300):
    g = (mp.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    for _ in range(iters):
        if f(c) < f(d):
            b = d
        else:
            a = c
        c, d = b - g * (b - a), a + g * (b - a)
    return (a + b) / 2


def mat(a, b, c, d):
    return mp.matrix([[a, b], [c, d]])


def squeeze(r, th):
    return mat(mp.cosh(r) + mp.sinh(r) * mp.cos(2 * th), mp.sinh(r) * mp.sin(2 * th),
               mp.sinh(r) * mp.sin(2 * th), mp.cosh(r) - mp.sinh(r) * mp.cos(2 * th))


def chain_dns(n, gx, gs, eta, r, th, R, ph, ze):
    """Brute force: explicit matrix products, forward covariance propagation."""
    cov = squeeze(r, th) * (mp.eye(2) / 2) * squeeze(r, th).T
    F = mat(1, 0, 2 * n * gs, 1)
    out = squeeze(R, ph) * F * cov * F.T * squeeze(R, ph).T
    H = mp.matrix([mp.cos(ze), mp.sin(ze)])
    var = (H.T * out * H)[0]
    var = eta * var + (1 - eta) / 2
    g = mp.sqrt(2 * eta * n) * gx * (H.T * squeeze(R, ph) * mp.matrix([0, 1]))[0]
    return var, g, mp.sqrt(var) / abs(g)


def optimal_angles(n, gs, eta, r, R):
    e2 = eps(eta) ** 2
    cot = -2 * n * gs / (1 + e2 * mp.e ** (2 * r - 2 * R))
    phi = mp.atan2(1, cot)
    C, S = mp.e**R * mp.cos(phi), mp.e**R * mp.sin(phi)
    A, B = S, C + 2 * n * gs * S
    th = mp.atan2(-2 * A * B, A**2 - B**2) / 2
    if th < 0:
        th += mp.pi
    return th, phi, phi, cot


def show(label, v):
    print(f"{label:60s} {mp.nstr(v, 17)}")


if __name__ == "__main__":
    print("== gaussian-core")
    S = squeeze(1, mp.pi / 4)
    show("squeeze(1,pi/4)[0,0]", S[0, 0]); show("squeeze(1,pi/4)[0,1]", S[0, 1])
    show("r for 10 dB", R10); show("R for 40 dB", R40)
    F = mat(1, 0, mp.mpf("0.85"), 1)
    c = F * (mp.eye(2) / 2) * F.T
    show("spm(1e5) cov 01", c[0, 1]); show("spm(1e5) cov 11", c[1, 1])

    print("== analytic")
    show("epsilon(0.9)", eps(ETA))
    show("dns2_coherent(3.92e5)", dns2_coherent(mp.mpf("3.92e5"), GX, GS, ETA))
    show("dns2_coherent(1e6)", dns2_coherent(mp.mpf("1e6"), GX, GS, ETA))
    cmin = GS / GX**2 * eps(ETA)
    show("dns2_coherent_min", cmin); show("  sqrt", mp.sqrt(cmin))
    nc = golden(lambda x: dns2_coherent(mp.e**x, GX, GS, ETA), mp.log(100), mp.log(1e12))
    show("golden argmin coherent", mp.e**nc)
    show("np_opt coherent", np_opt(GS, ETA, 0, 0))
    show("np_opt squeezed", np_opt(GS, ETA, R10, R40))
    ns = golden(lambda x: dns2_squeezed(mp.e**x, GX, GS, ETA, R10, R40), mp.log(100), mp.log(1e12))
    show("golden argmin squeezed", mp.e**ns)
    smin = GS / GX**2 * eps(ETA) * mp.e ** (-R10 - R40)
    show("dns2_squeezed_min", smin); show("  sqrt", mp.sqrt(smin))
    show("dns2_squeezed(1.1163e7)", dns2_squeezed(mp.mpf("1.1163e7"), GX, GS, ETA, R10, R40))
    show("improvement ratio", mp.sqrt(cmin / smin))
    show("fig5 R=0 dns", mp.sqrt(GS / GX**2 * eps(ETA) * mp.e ** (-R10)))
    show("B (R=1,phi=pi/4)", mp.e * mp.cos(mp.pi / 4) + mp.mpf("0.85") * mp.e * mp.sin(mp.pi / 4))
    show("cot phi (1e6, 10/40 dB)", optimal_angles(mp.mpf(1e6), GS, ETA, R10, R40)[3])

    print("== chain")
    show("gain R=0 (1e6, eta .9)", mp.sqrt(2 * ETA * 1e6) * GX)
    show("gain R=40dB", mp.sqrt(2 * ETA * 1e6) * GX * mp.e**R40)
    show("dns gs=0 eta=1 1e6", chain_dns(mp.mpf(1e6), GX, 0, 1, 0, 0, 0, 0, mp.pi / 2)[2])
    n0 = np_opt(GS, ETA, 0, 0)
    th, ph, ze, _ = optimal_angles(n0, GS, ETA, 0, 0)
    show("baseline chain dns @ optimal angles, np_opt", chain_dns(n0, GX, GS, ETA, 0, th, 0, ph, ze)[2])
    th, ph, ze, _ = optimal_angles(mp.mpf("3.92e5"), GS, ETA, 0, 0)
    show("baseline chain dns @ optimal angles, 3.92e5", chain_dns(mp.mpf("3.92e5"), GX, GS, ETA, 0, th, 0, ph, ze)[2])
    show("phase-quadrature dns (zeta=pi/2) 3.92e5", chain_dns(mp.mpf("3.92e5"), GX, GS, ETA, 0, 0, 0, 0, mp.pi / 2)[2])
    n1 = mp.mpf("1.1163e7")
    th, ph, ze, _ = optimal_angles(n1, GS, ETA, R10, R40)
    show("full chain dns @ optimal, 1.1163e7", chain_dns(n1, GX, GS, ETA, R10, th, R40, ph, ze)[2])

    print("== signal loss / thresholds")
    show("error w/ input loss (80,62,0.8)", (mp.mpf("0.8") * mp.mpf("0.2") * 80 + 62) / mp.mpf("0.64"))
    show("ns_star(0.9)", mp.mpf(8) / (27 * mp.mpf("0.1") ** 3))
    show("margin max(0.9)", mp.mpf(4) / (27 * mp.mpf("0.1") ** 2))
    show("dns_max(0.9)", mp.sqrt(mp.mpf(4) / (27 * mp.mpf("0.1") ** 2)))
    root = mp.findroot(lambda n: n ** (mp.mpf(2) / 3) - mp.mpf("0.1") * n - 1, 1.2)
    show("min n_s with margin>=1 (mu=0.9)", root)

    print("== resonator")
    hbar, c = mp.mpf("1.054571817e-34"), mp.mpf("2.99792458e8")
    w0 = 2 * mp.pi * c / mp.mpf("1.55e-6")
    gx = 2 * mp.mpf(1e10) * (mp.mpf("1.9e-20") / mp.mpf("1.43")) * hbar * w0 * c / mp.mpf("1.203e-15")
    show("gamma_x (preset)", gx)
    show("v_eff back-solved for 0.85e-5", gx * mp.mpf("1.203e-15") / mp.mpf("0.85e-5"))
