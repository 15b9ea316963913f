#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/ (deterministic)."""

import json
import re
import sys
import zlib
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import kg_vocab  # noqa: E402
from corpus_docs import DOCS  # noqa: E402
from report_docs import QA_REPORTS, QA_TESTSET, QUALITY_PROCEDURE  # noqa: E402

OUT = Path(__file__).resolve().parents[2] / "data"


def write_kg(path):
    rows = []  # (lemmas, entity, domains, gloss)
    for m in kg_vocab.MISSIONS:
        rows.append(([m], "none", ["mission"], "space mission"))
    for l in kg_vocab.LAUNCHERS:
        rows.append(([l], "none", ["launcher"], "launch vehicle"))
    for o in kg_vocab.ORGANIZATIONS:
        rows.append((o, "organization", ["programmatics"], "organization"))
    for p in kg_vocab.PEOPLE:
        rows.append(([p], "person", ["programmatics"], "person"))
    for p in kg_vocab.PLACES:
        rows.append(([p], "place", ["geography"], "place"))
    for domain, terms in kg_vocab.TERMS.items():
        for t in terms:
            rows.append(([t], "none", [domain], ""))
    for lemma, senses in kg_vocab.AMBIGUOUS:
        for domain, gloss in senses:
            rows.append(([lemma], "none", [domain], gloss))

    seen = {}
    lines = []
    label_to_id = {}
    for n, (lemmas, entity, domains, gloss) in enumerate(rows, 1):
        key = (lemmas[0].lower(), domains[0])
        assert key not in seen, f"duplicate concept {key}"
        seen[key] = n
        cid = f"c{n:04d}"
        label_to_id.setdefault(lemmas[0], cid)
        lines.append("\t".join(["concept", cid, "|".join(lemmas), entity, "|".join(domains), gloss]))
    for kind, a, b in kg_vocab.RELATIONS:
        lines.append("\t".join(["rel", kind, label_to_id[a], label_to_id[b]]))
    path.write_text("# mini space knowledge graph\n" + "\n".join(lines) + "\n")
    return len(rows)


def record(doc_id, source, date, codes, title, body, keywords=None):
    r = {"id": doc_id, "source": source, "title": title, "body": body, "date": date}
    if codes:
        r["for_codes"] = codes
    if keywords:
        r["keywords"] = keywords
    return json.dumps(r, ensure_ascii=False)


def report_body(sections):
    parts = []
    for heading, paragraphs in sections:
        for p in paragraphs:
            assert len(p) >= 200, (heading, len(p), p[:40])
        parts.append(heading + "\n" + "\n\n".join(paragraphs))
    return "\n\n".join(parts) + "\n"


def write_jsonl(path, lines):
    path.write_text("\n".join(lines) + "\n")


WORD = re.compile(r"[A-Za-z]+")
COMMON = (
    "the of and to a in is that for it as was with be by on not he this are or his from at which "
    "but have an they you were her she there been one all we their has would when if so no will "
    "more can what up said about other into out time them then some these only could new two may "
    "first like now my do over such our man me even most made after also did many before must "
    "through back years where much your way well down should because each just those people how "
    "too little state good very make world still own see men work long get here between both life "
    "being under never day same another know while last might us great old year off come since "
    "against go came right used take three money worry house family week child home water city "
    "school car food music love friend night party shop tea dog holiday weekend mother father "
    "morning happy tired"
).split()


JARGON = set(
    "regolith cubesat hydrazine passivation freeboard sinter sintered electrolysis deorbiting lidar "
    "altimeter radiometer spectrometer multispectral upwelling heatwave geostationary xenon thruster "
    "reusability telemedicine interferometry perigee monopropellant blackbody louvre radioisotope "
    "photometer magnetometer simulant microgravity exoplanet astrobiology isru conjunction "
    "nonconformance reclassification".split()
)


def lemma(w):
    w = w.lower()
    if len(w) > 4 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 3 and w.endswith("s") and not w.endswith("ss"):
        return w[:-1]
    return w


def variants(w):
    """Surface plus rough inflection-stripped forms, so lemma lookups hit."""
    w = w.lower()
    out = {w, lemma(w)}
    for suf in ("ing", "ed", "es"):
        if len(w) > len(suf) + 3 and w.endswith(suf):
            out.add(w[: -len(suf)])
            out.add(w[: -len(suf)] + "e")
    return out


def write_general_stats(path, texts):
    n_general = 100_000_000
    counts = {}
    for rank, w in enumerate(COMMON, 1):
        counts[w] = int(0.06 * n_general / rank)
    vocab = set()
    for t in texts:
        for w in WORD.findall(t):
            if w.isupper():
                continue  # acronyms stay out of the general corpus
            vocab.update(variants(w))
    # Other words get a deterministic pseudo rank; technical jargon is absent.
    for w in sorted(vocab):
        if w in counts or w in JARGON:
            continue
        h = zlib.crc32(w.encode())
        rank = 200 + h % 20000
        counts[w] = max(1, int(0.06 * n_general / rank))
    lines = [f"N={n_general}"] + [f"{w}\t{c}" for w, c in sorted(counts.items())]
    path.write_text("\n".join(lines) + "\n")


TEMPLATES = """# seed_type<TAB>pattern
# {X} text after the seed, {W} text before it, {V} copula, {S} subject, {M} modal, {B} verb base form
subject\tWhat {V} {X}?
definition\tWhat {V} {W}?
meaning\tWhat does {W} mean?
person\tWho {X}?
organization\tWho {X}?
organization\tWhich organization {X}?
place\t{W} which place {X}?
year\t{W} which year {X}?
number\t{W} how many {X}?
modal\tWhat {M} {S} {B}?
verb\tWhat does {S} {B}?
"""

CONFIG = {
    "corpus": "mini_corpus.jsonl",
    "reports": ["qa_reports.jsonl", "quality_procedure.jsonl"],
    "kg": "minikg.tsv",
    "general_stats": "general_stats.tsv",
    "templates": "templates.tsv",
    "predefined_questions": "predefined_questions.txt",
    "state_dir": "state",
    "index_k1": 1.2,
    "index_b": 0.75,
    "scorer": "bm25",
    "qa_threshold": 0.5,
    "qa_k": 10,
    "dedup_threshold": 0.8,
    "validation_min_score": 0.5,
    "beam_width": 5,
    "graph_min_sim": 0.15,
    "louvain_seed": 42,
    "louvain_resolution": 1.0,
    "top_similar": 5,
    "host": "127.0.0.1",
    "port": 8080,
}


def main():
    OUT.mkdir(exist_ok=True)
    n_concepts = write_kg(OUT / "minikg.tsv")

    corpus = [record(*d) for d in DOCS]
    write_jsonl(OUT / "mini_corpus.jsonl", corpus)

    reports = [record(rid, "report", date, None, title, report_body(secs))
               for rid, title, date, secs in QA_REPORTS]
    write_jsonl(OUT / "qa_reports.jsonl", reports)
    qid, qtitle, qdate, qsecs = QUALITY_PROCEDURE
    write_jsonl(OUT / "quality_procedure.jsonl",
                [record(qid, "report", qdate, None, qtitle, report_body(qsecs))])

    # One passage per paragraph: ids are "<doc>#p<n>" in document order.
    first_passage = {}
    for rid, _, _, secs in QA_REPORTS:
        n = 0
        for i, (_, paragraphs) in enumerate(secs):
            first_passage[(rid, i)] = n
            n += len(paragraphs)
    with open(OUT / "qa_testset.tsv", "w") as f:
        for q, a, (rid, sec) in QA_TESTSET:
            f.write(f"{q}\t{a}\t{rid}#p{first_passage[(rid, sec)]}\n")
    with open(OUT / "qa_retrieval.tsv", "w") as f:
        for q, a, (rid, sec) in QA_TESTSET:
            f.write(f"{q}\t{rid}#p{first_passage[(rid, sec)]}\n")

    texts = [d[5] for d in DOCS] + [p for _, _, _, s in QA_REPORTS for _, ps in s for p in ps]
    texts += [p for _, ps in qsecs for p in ps]
    write_general_stats(OUT / "general_stats.tsv", texts)

    (OUT / "templates.tsv").write_text(TEMPLATES)
    (OUT / "predefined_questions.txt").write_text(
        "# one question per line\n" + "".join(q + "\n" for q, _, _ in QA_TESTSET[:6]))
    (OUT / "config.json").write_text(json.dumps(CONFIG, indent=2) + "\n")
    print(f"{n_concepts} concepts, {len(corpus)} corpus docs, {len(reports)} reports")


if __name__ == "__main__":
    main()
