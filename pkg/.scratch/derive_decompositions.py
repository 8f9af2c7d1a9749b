# scratch: numerically derive frozen gate decompositions
import itertools

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def rx(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * X


def ry(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * Y


def rz(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * Z


CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CNOT10 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)
ISWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def equal_up_to_phase(a, b):
    k = np.argmax(abs(b))
    i, j = divmod(k, b.shape[1])
    if abs(a[i, j]) < 1e-12:
        return False, 0
    phase = b[i, j] / a[i, j]
    if abs(abs(phase) - 1) > 1e-9:
        return False, 0
    return np.allclose(a * phase, b, atol=1e-9), phase


angles = {
    "0": 0.0,
    "pi/2": np.pi / 2,
    "-pi/2": -np.pi / 2,
    "pi": np.pi,
}
singles = []
for nm, fn in (("RX", rx), ("RY", ry), ("RZ", rz)):
    for an, av in angles.items():
        if av == 0.0 and nm != "RX":
            continue
        singles.append((f"{nm}({an})", fn(av)))
# identity slot
singles.append(("I", I2))


def search_two_entangler(ent, target, names):
    """layers: (A0 x A1) ent (B0 x B1) ent (C0 x C1) == target up to phase"""
    sols = []
    for a0n, a0 in singles:
        for a1n, a1 in singles:
            left = np.kron(a0, a1) @ ent
            for b0n, b0 in singles:
                for b1n, b1 in singles:
                    mid = left @ np.kron(b0, b1) @ ent
                    for c0n, c0 in singles:
                        for c1n, c1 in singles:
                            u = mid @ np.kron(c0, c1)
                            ok, ph = equal_up_to_phase(u, target)
                            if ok:
                                cost = sum(
                                    x != "I" for x in (a0n, a1n, b0n, b1n, c0n, c1n)
                                )
                                sols.append(
                                    (cost, (a0n, a1n, b0n, b1n, c0n, c1n), ph)
                                )
    sols.sort(key=lambda s: s[0])
    return sols[:6]


print("=== CNOT(0,1) from 2 ISWAP ===")
for cost, seq, ph in search_two_entangler(ISWAP, CNOT, None):
    print(cost, seq, "phase", np.angle(ph) / np.pi, "pi")

print("=== ISWAP from CNOT(0,1), CNOT(1,0) ===")
# template (A0xA1) CNOT01 (B0xB1) CNOT10 (C0xC1)
sols = []
for a0n, a0 in singles:
    for a1n, a1 in singles:
        left = np.kron(a0, a1) @ CNOT
        for b0n, b0 in singles:
            for b1n, b1 in singles:
                mid = left @ np.kron(b0, b1) @ CNOT10
                for c0n, c0 in singles:
                    for c1n, c1 in singles:
                        u = mid @ np.kron(c0, c1)
                        ok, ph = equal_up_to_phase(u, ISWAP)
                        if ok:
                            cost = sum(
                                x != "I" for x in (a0n, a1n, b0n, b1n, c0n, c1n)
                            )
                            sols.append((cost, (a0n, a1n, b0n, b1n, c0n, c1n), ph))
sols.sort(key=lambda s: s[0])
for cost, seq, ph in sols[:6]:
    print(cost, seq, "phase", np.angle(ph) / np.pi, "pi")

print("=== ISWAP from 2x CNOT(0,1) only ===")
sols = []
for a0n, a0 in singles:
    for a1n, a1 in singles:
        left = np.kron(a0, a1) @ CNOT
        for b0n, b0 in singles:
            for b1n, b1 in singles:
                mid = left @ np.kron(b0, b1) @ CNOT
                for c0n, c0 in singles:
                    for c1n, c1 in singles:
                        u = mid @ np.kron(c0, c1)
                        ok, ph = equal_up_to_phase(u, ISWAP)
                        if ok:
                            cost = sum(
                                x != "I" for x in (a0n, a1n, b0n, b1n, c0n, c1n)
                            )
                            sols.append((cost, (a0n, a1n, b0n, b1n, c0n, c1n), ph))
sols.sort(key=lambda s: s[0])
for cost, seq, ph in sols[:4]:
    print(cost, seq, "phase", np.angle(ph) / np.pi, "pi")

print("=== H Euler ZXZ ===")
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
u = rz(np.pi / 2) @ rx(np.pi / 2) @ rz(np.pi / 2)
ok, ph = equal_up_to_phase(u, H)
print("RZ(pi/2) RX(pi/2) RZ(pi/2):", ok, np.angle(ph) / np.pi, "pi")
u = rx(np.pi) @ ry(np.pi / 2)
ok, ph = equal_up_to_phase(u, H)
print("RX(pi) RY(pi/2):", ok, np.angle(ph) / np.pi if ok else "-")

print("=== CNOT from ZX(pi/2) ===")
ZX = np.kron(Z, X)


def zxrot(t):
    return np.cos(t / 2) * np.eye(4) - 1j * np.sin(t / 2) * ZX


# template (A0 x A1) ZX(s pi/2) (B0 x B1)
sols = []
for s in (1, -1):
    ent = zxrot(s * np.pi / 2)
    for a0n, a0 in singles:
        for a1n, a1 in singles:
            left = np.kron(a0, a1) @ ent
            for b0n, b0 in singles:
                for b1n, b1 in singles:
                    u = left @ np.kron(b0, b1)
                    ok, ph = equal_up_to_phase(u, CNOT)
                    if ok:
                        cost = sum(x != "I" for x in (a0n, a1n, b0n, b1n))
                        sols.append((cost, s, (a0n, a1n, b0n, b1n), ph))
sols.sort(key=lambda t: t[0])
for cost, s, seq, ph in sols[:8]:
    print(cost, "s=", s, seq, "phase", np.angle(ph) / np.pi, "pi")
