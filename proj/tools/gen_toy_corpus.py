#!/usr/bin/env python3
# Copyright 2026 The CID Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled toy corpus into data/.

train.txt       one training sentence per line, common vocabulary only
contexts.txt    one context document per line with one planted sentence
queries.txt     "tell me about the <entity>" per context
references.txt  the planted sentence per context
"""

import argparse
import pathlib
import random

DETERMINERS = ["the", "a"]
NOUNS = ["cat", "dog", "man", "woman", "bird", "king", "queen", "house",
         "city", "river", "tree", "boat"]
VERBS = ["saw", "found", "left", "met", "liked", "built", "crossed"]
ADJECTIVES = ["old", "small", "red", "big"]
PREPOSITIONS = ["near", "by", "in"]

# Entities and their attributes never occur in train.txt.
ENTITIES = ["ufo", "orb", "comet", "golem", "wyvern", "sphinx", "kraken", "yeti"]
ATTRIBUTES = ["zeta", "omega", "delta", "sigma", "kappa"]


def noun_phrase(rng):
    words = [rng.choice(DETERMINERS)]
    if rng.random() < 0.3:
        words.append(rng.choice(ADJECTIVES))
    words.append(rng.choice(NOUNS))
    return words


def sentence(rng):
    words = noun_phrase(rng) + [rng.choice(VERBS)] + noun_phrase(rng)
    if rng.random() < 0.3:
        words += [rng.choice(PREPOSITIONS)] + noun_phrase(rng)
    return " ".join(words + ["."])


def planted(rng, entity):
    words = ["the", entity, rng.choice(ATTRIBUTES), rng.choice(VERBS)]
    words += noun_phrase(rng)
    return " ".join(words + ["."])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve()
                                             .parent.parent / "data"))
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--train-sentences", type=int, default=320)
    parser.add_argument("--contexts", type=int, default=120)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    train = [sentence(rng) for _ in range(args.train_sentences)]
    contexts, queries, references = [], [], []
    for _ in range(args.contexts):
        entity = rng.choice(ENTITIES)
        plant = planted(rng, entity)
        body = [sentence(rng) for _ in range(rng.randint(2, 4))]
        body.insert(rng.randint(0, len(body)), plant)
        contexts.append(" ".join(body))
        queries.append(f"tell me about the {entity}")
        references.append(plant)

    for name, lines in [("train.txt", train), ("contexts.txt", contexts),
                        ("queries.txt", queries), ("references.txt", references)]:
        (out / name).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
