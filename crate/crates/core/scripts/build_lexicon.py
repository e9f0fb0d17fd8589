#!/usr/bin/env python3
"""Build data/lexicon/reference-v1.tsv from the pattern subjectivity lexicon.

The source is `en-sentiment.xml` as shipped inside the textblob wheel
(lexicon by De Smedt & Daelemans, released under PDDL).

    pip download textblob --no-deps -d /tmp/tb
    python3 scripts/build_lexicon.py /tmp/tb/textblob-*.whl > data/lexicon/reference-v1.tsv
"""
import collections
import sys
import xml.etree.ElementTree as ET
import zipfile

INTENSIFIERS = ("definitely", "especially", "really", "seriously", "very")
NEGATORS = (
    "no", "not", "never", "nor", "cannot", "can't", "don't", "doesn't",
    "didn't", "isn't", "wasn't", "aren't", "weren't", "won't", "wouldn't",
    "shouldn't", "couldn't", "hasn't", "haven't", "hadn't",
)


def main(wheel):
    with zipfile.ZipFile(wheel) as z:
        root = ET.fromstring(z.read("textblob/en/en-sentiment.xml"))
    polarity = collections.defaultdict(list)
    intensity = collections.defaultdict(list)
    for w in root.findall("word"):
        form = w.get("form").lower()
        polarity[form].append(float(w.get("polarity")))
        intensity[form].append(float(w.get("intensity", "1")))

    print("# reference sentiment lexicon v1")
    print("# record_type\tterm\tvalue")
    for form in sorted(polarity):
        if form in INTENSIFIERS or form in NEGATORS:
            continue
        # unigram entries only
        if not all(c.isalnum() or c in "-'" for c in form):
            continue
        mean = sum(polarity[form]) / len(polarity[form])
        print(f"WORD\t{form}\t{round(mean, 4):.4f}")
    for form in INTENSIFIERS:
        mean = sum(intensity[form]) / len(intensity[form])
        print(f"INTENSIFIER\t{form}\t{mean:.4f}")
    for form in NEGATORS:
        print(f"NEGATOR\t{form}\t")


if __name__ == "__main__":
    main(sys.argv[1])
