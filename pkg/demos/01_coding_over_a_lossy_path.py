"""Send a short message through two lossy relays with random linear coding.

Walks through the pieces one at a time: field arithmetic, cutting the
message into a coding group, encoding at the source, recoding at each
relay, and progressive decoding at the sink.

    python3 demos/01_coding_over_a_lossy_path.py
"""

import numpy as np

from ancosa import GF256, CodingGroup, Decoder, recode, serialize, source_encode

rng = np.random.default_rng(2024)

# GF(2^8): addition is xor, multiplication goes through log tables
a, b = 0x57, 0x83
print(f"{a:#04x} + {b:#04x} = {GF256.add(a, b):#04x}")
print(f"{a:#04x} * {b:#04x} = {GF256.mul(a, b):#04x}")
print(f"inverse of {a:#04x} is {GF256.inv(a):#04x}\n")

message = b"Coded packets do not care which copies got lost."
group, length = CodingGroup.from_bytes(message, n=8)
print(f"{length} bytes -> {group.n} packets of {group.L} symbols")

loss = 0.25
rate = 1 / (1 - loss)  # enough redundancy to cover the expected loss per hop

packets = source_encode(group, rate, rng)
print(f"source sends {len(packets)} packets; first one on the wire:")
print("  " + serialize(packets[0]).hex())

for hop in ("relay 1", "relay 2"):
    heard = [p for p in packets if rng.random() >= loss]
    packets = recode(heard, rate, rng)
    print(f"{hop} heard {len(heard)}, forwards {len(packets)} recoded packets")

sink = Decoder(group.n, group.L)
for p in packets:
    if rng.random() < loss:
        continue
    fresh = sink.accept(p)
    print(f"  sink rank {sink.rank}/{group.n}{'' if fresh else '  (nothing new)'}")
    if sink.complete:
        break

if sink.complete:
    text = CodingGroup(sink.decode()).to_bytes(length)
    print("\ndecoded:", text.decode())
else:
    print("\nsink is still short; with end-to-end repair the source would send more")
