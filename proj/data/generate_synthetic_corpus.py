#!/usr/bin/env python3
"""Regenerates data/synthetic_corpus.csv (60 Scopus-style rows, 2009-2022)."""
import csv
import random
import sys
from pathlib import Path

YEAR_COUNTS = {2009: 1, 2010: 1, 2011: 2, 2012: 2, 2013: 2, 2014: 3, 2015: 3,
               2016: 4, 2017: 4, 2018: 5, 2019: 7, 2020: 8, 2021: 9, 2022: 9}

COMMON = ["data", "science", "analysis", "model", "methods", "research", "approach",
          "results", "information", "study"]
FILLER = ["the", "of", "and", "a", "in", "for", "with", "is", "this", "we", "on", "to"]
POOLS = {
    "early": ["machine", "learning", "accuracy", "classification", "mining", "database",
              "statistics", "clustering", "regression", "warehouse"],
    "growth": ["process", "big", "hadoop", "cloud", "visualization", "business",
               "analytics", "platform", "scalable", "volume"],
    "boom": ["deep", "neural", "network", "covid", "health", "python", "prediction",
             "students", "education", "pandemic"],
}

PIONEERS = {
    # (year, title, citations)
    (2016, "Workflow discovery from event logs in practice", 1164),
    (2013, "Scaling analytics platforms for massive data", 710),
    (2015, "Visual exploration of large business datasets", 668),
    (2019, "Deep networks for clinical prediction", 444),
    (2019, "Teaching data science with notebooks", 207),
    (2020, "Pandemic dashboards, open data and public health", 117),
    (2019, "Curriculum design for analytics programs", 88),
    (2021, "Student outcomes in online statistics", 88),
}

TYPES = ["Conference Paper"] * 10 + ["Article"] * 7 + ["Review", "Book Chapter",
                                                        "Conference Review", "Book"]


def pool_for(year):
    if year <= 2012:
        return POOLS["early"]
    if year <= 2018:
        return POOLS["growth"]
    return POOLS["boom"]


def abstract(rng, year):
    own = pool_for(year)
    words = []
    for _ in range(rng.randint(28, 48)):
        r = rng.random()
        if r < 0.35:
            words.append(rng.choice(own))
        elif r < 0.65:
            words.append(rng.choice(COMMON))
        elif r < 0.9:
            words.append(rng.choice(FILLER))
        else:
            words.append(rng.choice(POOLS[rng.choice(list(POOLS))]))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def main(out):
    rng = random.Random(20221231)
    pioneers = sorted(PIONEERS)
    rows = []
    n = 0
    for year, count in YEAR_COUNTS.items():
        for _ in range(count):
            n += 1
            doc_type = rng.choice(TYPES)
            title = f"Synthetic study {n:02d} on {rng.choice(pool_for(year))} {rng.choice(COMMON)}"
            cited = str(rng.randint(0, 60))
            hit = [p for p in pioneers if p[0] == year]
            if hit:
                pioneers.remove(hit[0])
                title, cited = hit[0][1], str(hit[0][2])
            kws = "; ".join(rng.sample(pool_for(year), 3))
            rows.append({
                "Authors": f"Author{n:02d} A.",
                "Title": title,
                "Year": str(year),
                "Source title": rng.choice(["Journal of Data", "Proc. Analytics Conf.", "Lecture Notes"]),
                "Cited by": cited,
                "Abstract": abstract(rng, year),
                "Author Keywords": kws,
                "Document Type": doc_type,
                "EID": f"2-s2.0-{84000000000 + n * 7919}",
            })
    # hand-placed edge cases
    rows[5]["Document Type"] = "Letter"
    rows[40]["Document Type"] = "Editorial"
    rows[12]["Abstract"] = ""
    rows[33]["Abstract"] = "   "
    rows[20]["Abstract"] = rows[20]["Abstract"].replace(" data ", ' "data", ', 1)
    rows[21]["Abstract"] = rows[21]["Abstract"] + "\nSecond paragraph about modelación, niños and data."
    rows[22]["Cited by"] = ""
    rows[23]["Author Keywords"] = "big data;  ; Cloud "
    rows[24]["Document Type"] = "conference-paper"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).with_name("synthetic_corpus.csv"))
