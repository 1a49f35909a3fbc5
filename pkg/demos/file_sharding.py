"""
Sharding files through the command line
=======================================

Write a config, encode two files into three share files, then decode from
different subsets.  Everything goes through ``smdc.cli.main`` exactly as
the ``smdc`` command would.
"""
import json
import tempfile
from pathlib import Path

from smdc.cli import main

work = Path(tempfile.mkdtemp())
(work / "cfg.json").write_text(json.dumps(
    {"mode": "mss", "L": 3, "s": 2, "q": 257, "lengths": [0, 4, 6], "scheme": "chain", "seed": 1}))
(work / "public.txt").write_bytes(b"needs any two shares")
(work / "private.txt").write_bytes(b"needs all three shares, and one alone leaks nothing")

main(["encode", "--config", str(work / "cfg.json"),
      "--in", f"2={work / 'public.txt'}", f"3={work / 'private.txt'}", "--out", str(work / "shares")])
for p in sorted((work / "shares").iterdir()):
    print(p.name, p.stat().st_size, "octets")

shares = sorted(str(p) for p in (work / "shares").iterdir())
main(["decode", "--shares", shares[0], shares[2], "--out", str(work / "two")])
main(["decode", "--shares", *shares, "--out", str(work / "three")])
print((work / "two" / "source_2.bin").read_bytes())
print((work / "three" / "source_3.bin").read_bytes())

# one share on its own is refused
print("exit status with one share:", main(["decode", "--shares", shares[1], "--out", str(work / "one")]))
