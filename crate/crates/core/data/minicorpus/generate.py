"""Generates the bundled three-topic mini-corpus.

Sentences are drawn from tagged templates. Content slots (NN, V, JJ, ADV)
take a topic word most of the time and a general word otherwise; function
slots draw from shared lists. Output is deterministic for a fixed seed.

    python3 generate.py [output_dir]
"""

import random
import sys
from pathlib import Path

SEED = 20240611
DOCS_PER_TOPIC = 4
SENTENCES_PER_DOC = 84
TOPIC_SHARE = 0.75

TOPICS = {
    "Numbers": {
        "NN": ["number", "integer", "prime", "digit", "sum", "product", "fraction",
               "zero", "equation", "theorem", "factor", "divisor", "square", "root",
               "sequence", "proof", "counts"],
        "V": ["divides", "equals", "counts", "multiplies", "adds", "proves",
              "factors", "exceeds", "squares", "computes"],
        "JJ": ["prime", "even", "odd", "rational", "negative", "positive",
               "natural", "infinite", "square"],
        "ADV": ["exactly", "evenly", "uniquely", "precisely"],
    },
    "Democracy": {
        "NN": ["vote", "citizen", "election", "parliament", "party", "government",
               "law", "right", "constitution", "majority", "president", "court",
               "power", "people", "votes", "rules"],
        "V": ["elects", "votes", "governs", "passes", "represents", "protects",
              "debates", "rules", "chooses", "limits"],
        "JJ": ["democratic", "free", "political", "legal", "national", "public",
               "fair", "right"],
        "ADV": ["freely", "fairly", "directly", "openly"],
    },
    "Hurricane": {
        "NN": ["storm", "hurricane", "wind", "rain", "eye", "ocean", "coast",
               "flood", "damage", "pressure", "category", "surge", "season",
               "floods", "cloud"],
        "V": ["forms", "strikes", "floods", "weakens", "hits", "destroys",
              "moves", "damages", "rains", "spins"],
        "JJ": ["tropical", "strong", "heavy", "coastal", "severe", "warm", "low",
               "wet"],
        "ADV": ["quickly", "rapidly", "heavily", "slowly"],
    },
}

GENERAL = {
    "NN": ["year", "part", "way", "area", "time", "example", "form", "kind",
           "history", "result"],
    "V": ["is", "has", "becomes", "makes", "shows", "gives", "follows", "needs"],
    "JJ": ["large", "small", "many", "important", "first", "other", "new", "common"],
    "ADV": ["often", "usually", "also", "very", "sometimes"],
}

FUNCTION = {
    "DT": ["the", "a", "this", "every", "some", "each"],
    "IN": ["of", "in", "on", "by", "with", "from", "for"],
    "CC": ["and", "or", "but"],
    "PRP": ["it", "they", "we"],
    "WH": ["which", "that", "when", "where"],
    "MD": ["can", "may", "will", "must"],
    "CD": ["one", "two", "three", "four", "five", "ten"],
    "TO": ["to"],
    "PUNCT": [".", ","],
}

TEMPLATES = [
    "DT JJ NN V DT NN PUNCT",
    "DT NN IN DT NN V ADV PUNCT",
    "PRP MD V DT JJ NN PUNCT",
    "WH DT NN V PUNCT DT NN V ADV PUNCT",
    "DT NN V CD NN IN DT NN PUNCT",
    "NN CC NN V JJ PUNCT",
    "DT NN V TO V DT NN PUNCT",
    "PRP V ADV JJ PUNCT",
    "IN DT NN PUNCT DT NN V DT NN PUNCT",
    "DT JJ NN WH V DT NN V JJ PUNCT",
    "DT NN MD ADV V DT JJ NN PUNCT",
    "CD JJ NN V IN DT NN CC DT NN PUNCT",
]


def fill(tag, topic, rng):
    if tag in FUNCTION:
        words = FUNCTION[tag]
        if tag == "PUNCT":
            return words[0]
        return rng.choice(words)
    if rng.random() < TOPIC_SHARE:
        return rng.choice(TOPICS[topic][tag])
    return rng.choice(GENERAL[tag])


def sentence(topic, rng):
    tags = rng.choice(TEMPLATES).split()
    tokens = []
    for i, tag in enumerate(tags):
        if tag == "PUNCT" and i + 1 < len(tags):
            tokens.append(",")
        else:
            tokens.append(fill(tag, topic, rng))
    return tokens, tags


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    (out / "docs").mkdir(parents=True, exist_ok=True)
    (out / "tags").mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    manifest = []
    for topic in TOPICS:
        for k in range(1, DOCS_PER_TOPIC + 1):
            doc_id = f"{topic.lower()}-{k}"
            sentences = [sentence(topic, rng) for _ in range(SENTENCES_PER_DOC)]
            (out / "docs" / f"{doc_id}.txt").write_text(
                "".join(" ".join(tokens) + "\n" for tokens, _ in sentences))
            (out / "tags" / f"{doc_id}.tsv").write_text("\n".join(
                "".join(f"{w}\t{t}\n" for w, t in zip(tokens, tags))
                for tokens, tags in sentences))
            manifest.append(f"{doc_id}\t{topic}\tdocs/{doc_id}.txt\ttags/{doc_id}.tsv\n")
    (out / "manifest.tsv").write_text("".join(manifest))


if __name__ == "__main__":
    main()
