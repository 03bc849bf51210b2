#!/usr/bin/env python3
"""Recompute the synthetic-run goldens with networkx, independently of the C++ code.

Usage: crosscheck_golden.py <run output dir>

Parsing, filtering and normalization are redone here with deliberately naive
code that only covers what the synthetic corpora use. Prints one line per
check and exits non-zero on any mismatch.
"""
import csv
import itertools
import json
import os
import sys

import networkx as nx

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

# Hand-resolved canonical forms of every raw keyword in data/synthetic.
CANON = {
    "biosensor": "biosensor", "biosensors": "biosensor", "bio-sensor": "biosensor",
    "breast cancer": "breast cancer", "electrochemical biosensor": "electrochemical biosensor",
    "gold nanoparticles": "gold nanoparticle", "her2": "her2", "optical sensor": "optical sensor",
    "apoptosis": "apoptosis", "reactive oxygen species": "reactive oxygen species",
    "lung cancer": "lung cancer", "electronic nose (e-nose)": "electronic nose",
    "breath analysis": "breath analysis", "gas sensor": "gas sensor", "gas sensors": "gas sensor",
    "volatile organic compounds (voc)": "volatile organic compound", "voc": "volatile organic compound",
    "exhaled breath": "exhaled breath", "prostate cancer": "prostate cancer",
    "psa": "prostate specific antigen", "immunosensor": "immunosensor",
    "electrochemical sensor": "electrochemical sensor", "flutamide": "flutamide", "sarcosine": "sarcosine",
}


def records(path):
    out, cur = [], {}
    for line in open(path, encoding="utf-8"):
        line = line.rstrip("\n")
        tag, val = line[:2], line[3:]
        if tag == "ER":
            out.append(cur)
            cur = {}
        elif tag.strip():
            cur[tag] = val
    return out


def is_sensor(label):
    return any(w.endswith("sensor") or w.endswith("sensors") for w in label.replace("-", " ").split())


def forced_tree(g):
    uf = nx.utils.UnionFind(g.nodes)
    kept = nx.Graph()
    kept.add_nodes_from(g.nodes(data=True))
    for u, v, w in sorted(((min(a, b), max(a, b), d["weight"]) for a, b, d in g.edges(data=True)),
                          key=lambda e: (-e[2], e[0], e[1])):
        if uf[u] != uf[v]:
            uf.union(u, v)
            kept.add_edge(u, v, weight=w)
    return kept


def groups(net, bc, threshold=0.1):
    heads = {n for n in net if bc[n] > threshold}
    members = {h: {h} for h in heads}
    fallback = []
    rest = net.subgraph(n for n in net if n not in heads)
    for frag in nx.connected_components(rest):
        touching = {h for n in frag for h in net[n] if h in heads}
        if touching:
            best = sorted(touching, key=lambda h: (-bc[h], h))[0]
            members[best] |= frag
    for comp in nx.connected_components(net):
        if not comp & heads:
            head = sorted(comp, key=lambda n: (-bc[n], n))[0]
            fallback.append((head, comp))
    ordered = sorted(members.items(), key=lambda kv: (-bc[kv[0]], kv[0])) + sorted(fallback, key=lambda kv: (-bc[kv[0]], kv[0]))
    rows = []
    for head, mem in ordered:
        ranked = sorted((m for m in mem if m != head), key=lambda m: (-net.nodes[m]["df"], m))
        top = ranked[:5]
        sens = [m for m in sorted(mem, key=lambda m: (-net.nodes[m]["df"], m)) if is_sensor(m)]
        rows.append((head, top, sens, mem))
    return rows


def main(out_dir):
    cfg = json.load(open(os.path.join(DATA, "synthetic", "config.json")))
    ok = True

    def check(name, cond):
        nonlocal ok
        ok = ok and cond
        print(("PASS " if cond else "FAIL ") + name)

    report = json.load(open(os.path.join(out_dir, "report.json")))
    stats = {c["label"]: c for c in report["corpora"]}
    presence = {}
    for entry in cfg["corpora"]:
        label = entry["label"]
        recs = records(os.path.join(DATA, "synthetic", entry["input"]))
        kept = [r for r in recs if r.get("DT") == "Article" and 1991 <= int(r["PY"]) <= 2021]
        g = nx.Graph()
        for r in kept:
            kws = []
            for raw in r.get("DE", "").split(";"):
                c = CANON[raw.strip().lower()]
                if c not in kws:
                    kws.append(c)
            for k in kws:
                if k in g:
                    g.nodes[k]["df"] += 1
                else:
                    g.add_node(k, df=1)
            for a, b in itertools.combinations(kws, 2):
                w = g.get_edge_data(a, b, {"weight": 0})["weight"]
                g.add_edge(a, b, weight=w + 1)
        isolates = sorted(nx.isolates(g))
        built = g.number_of_nodes()
        g.remove_nodes_from(isolates)
        net = forced_tree(g)
        bc = nx.betweenness_centrality(net, normalized=True)
        rows = groups(net, bc)
        s = stats[label]
        check(f"{label} records_parsed", s["records_parsed"] == len(recs))
        check(f"{label} records_filtered", s["records_filtered"] == len(kept))
        check(f"{label} nodes_built", s["nodes_built"] == built)
        check(f"{label} isolated_keywords", s["isolated_keywords"] == isolates)
        check(f"{label} nodes", s["nodes"] == net.number_of_nodes())
        check(f"{label} edges_before", s["edges_before"] == g.number_of_edges())
        check(f"{label} edges_after", s["edges_after"] == net.number_of_edges())
        check(f"{label} components", s["components"] == nx.number_connected_components(net))
        check(f"{label} sensor_nodes", s["sensor_nodes"] == sum(is_sensor(n) for n in net))
        check(f"{label} group_count", s["group_count"] == len(rows))

        with open(os.path.join(out_dir, label, "groups.csv"), newline="") as f:
            got = list(csv.DictReader(f))
        want = [{"group_index": str(i + 1), "core_keyword": h, "top5_keywords": "; ".join(t),
                 "related_sensors": "; ".join(se)} for i, (h, t, se, _) in enumerate(rows)]
        check(f"{label} groups.csv", got == want)

        with open(os.path.join(out_dir, label, "scores.csv"), newline="") as f:
            got_bc = {r["label"]: float(r["betweenness"]) for r in csv.DictReader(f)}
        check(f"{label} scores.csv", got_bc.keys() == bc.keys() and all(abs(got_bc[k] - bc[k]) < 1e-12 for k in bc))
        presence[label] = {m for _, _, _, mem in rows for m in mem if is_sensor(m)}

    with open(os.path.join(out_dir, "sensor_matrix.csv"), newline="") as f:
        got = list(csv.reader(f))
    labels = [c["label"] for c in cfg["corpora"]]
    sensors = sorted(set().union(*presence.values()), key=lambda s: (-sum(s in presence[l] for l in labels), s))
    want = [["sensor"] + labels] + [[s] + ["1" if s in presence[l] else "0" for l in labels] for s in sensors]
    check("sensor_matrix.csv", got == want)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
