"""End-to-end walkthrough of the command-line interface using the in-process
entry point (the same code path as the installed `pdchannel` command).

Run: python3 demos/08_cli_walkthrough.py
"""

import os
import tempfile

from pdchannel import channel as ch
from pdchannel import cli, zoo


def run(argv):
    print(f"\n$ pdchannel {' '.join(argv)}")
    code = cli.main(argv)
    print(f"[exit {code}]")


with tempfile.TemporaryDirectory() as tmp:
    chan = os.path.join(tmp, "ad.json")
    ch.save_channel(zoo.amplitude_damping(0.3), chan)

    run(["inspect", chan])
    run(["classify", chan])
    run(["capacity", chan, "--restarts", "4", "--seed", "7"])

    run(["zoo", "list", "--format", "text"])
    exported = os.path.join(tmp, "horodecki.json")
    run(["zoo", "export", "horodecki", "--alpha", "4.0", "--out", exported])
    run(["inspect", exported])

    # input errors exit with code 2 and an explanation on stderr
    run(["inspect", os.path.join(tmp, "missing.json")])
