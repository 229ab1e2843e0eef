"""Parse every builtin scenario's SVG with a conforming XML parser and check its structure."""
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

NS = "{http://www.w3.org/2000/svg}"


def main(cli, work):
    os.makedirs(work, exist_ok=True)
    for n in range(1, 7):
        name = f"example{n}"
        subprocess.run([cli, "run", "--scenario", name, "--t-end", "10", "--out", work],
                       check=True, stdout=subprocess.DEVNULL)
        root = ET.parse(os.path.join(work, name + ".svg")).getroot()
        assert root.tag == NS + "svg", root.tag
        groups = [g for g in root.iter(NS + "g") if g.get("class") == "estimator"]
        assert groups, "no estimator groups"
        for g in groups:
            lines = g.findall(NS + "polyline")
            top = [p for p in lines if p.get("class") == "estimate"]
            bottom = [p for p in lines if p.get("class") == "error"]
            q = 3 if n in (3, 6) else 2
            assert len(top) == q and len(bottom) == 1, (name, len(top), len(bottom))
    print("svg ok")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
