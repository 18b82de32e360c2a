import json
import logging
from pathlib import Path

import numpy as np
import pytest

from dnacap.genetic_code import AMINO_INDEX, CODONS, MULTIPLICITIES, SYNONYM_INDICES
from dnacap.sequences import (
    CodonCounts,
    FastaError,
    RawSequence,
    amino_pmf,
    amino_pmf_to_csv,
    codon_usage,
    count_codons,
    frame_codons,
    ingest_fasta,
    parse_fasta,
)

DATA = Path(__file__).parent / "data"

# documented codon content of the shipped fixtures
TOY_A_COUNTS = {"ATG": 1, "GCA": 1, "GCC": 1, "TGC": 1, "TCA": 2, "AGC": 1,
                "CTG": 1, "TAA": 1}
TOY_B_COUNTS = {"ATG": 1, "GTA": 1, "GTC": 1, "GTT": 1, "GGA": 1, "GGC": 1,
                "GGT": 1, "CAC": 1, "CAT": 1, "AAA": 1, "TTC": 1, "TTT": 1,
                "AGA": 1, "TCA": 1, "AGC": 1, "TAA": 1}


# --- parsing -----------------------------------------------------------------

def test_parse_single_record():
    records = parse_fasta(">g\nTATTGC\n")
    assert records == [RawSequence(header="g", bases="TATTGC")]


def test_parse_folded_lines():
    assert parse_fasta(">a\nTA\nTTGC\n")[0].bases == "TATTGC"


def test_parse_illegal_character_position():
    with pytest.raises(FastaError, match=r"'X' at line 2, column 3"):
        parse_fasta(">g\nTAXTGC\n")


def test_parse_accepts_rna_letters_and_case():
    assert parse_fasta(">r\nuaccgu\n")[0].bases == "TACCGT"


def test_parse_keeps_unknown_bases():
    assert parse_fasta(">n\nACNTG\n")[0].bases == "ACNTG"


def test_parse_multiple_records():
    records = parse_fasta(">one\nACG\n>two desc here\nTTT\nGGG\n")
    assert [r.header for r in records] == ["one", "two desc here"]
    assert [r.bases for r in records] == ["ACG", "TTTGGG"]


def test_parse_empty_input_is_empty():
    assert parse_fasta("") == []
    assert parse_fasta("   \n\n") == []


def test_parse_data_before_header_is_error():
    with pytest.raises(FastaError, match="before any '>'"):
        parse_fasta("ACGT\n>late\nACGT\n")


def test_parse_record_without_body_is_error():
    with pytest.raises(FastaError, match="no sequence data"):
        parse_fasta(">empty\n>full\nACG\n")
    with pytest.raises(FastaError, match="no sequence data"):
        parse_fasta(">only-header\n")


# --- framing -----------------------------------------------------------------

def test_frame_codons_worked_example():
    assert frame_codons("TATTGC") == ["TAT", "TGC"]


def test_frame_codons_drops_trailing_bases(caplog):
    with caplog.at_level(logging.WARNING, logger="dnacap.sequences"):
        assert frame_codons("TATTGCA") == ["TAT", "TGC"]
    assert "1 trailing" in caplog.text


def test_frame_codons_frame_shift():
    assert frame_codons("TATTGC", frame=1) == ["ATT"]
    assert frame_codons("TATTGC", frame=2) == ["TTG"]


def test_frame_codons_accepts_raw_sequence():
    assert frame_codons(RawSequence("x", "TATTGC")) == ["TAT", "TGC"]


def test_frame_codons_too_short():
    with pytest.raises(ValueError, match="fewer than 3"):
        frame_codons("TA")
    with pytest.raises(ValueError, match="fewer than 3"):
        frame_codons("ACGT", frame=2)


def test_frame_codons_invalid_arguments():
    with pytest.raises(ValueError):
        frame_codons("ACGACG", frame=3)
    with pytest.raises(ValueError):
        frame_codons("ACGACG", n_policy="whatever")


def test_frame_codons_n_policies():
    assert frame_codons("ACGANGTTT", n_policy="drop_codon") == ["ACG", "TTT"]
    with pytest.raises(ValueError, match="unknown base"):
        frame_codons("ACGANGTTT", n_policy="error")


# --- counting and distributions ------------------------------------------------

def test_count_codons_and_amino_pmf():
    counts = count_codons(["TAT", "TGC"])
    assert counts.total == 2
    pmf = amino_pmf(counts)
    assert pmf[AMINO_INDEX["Tyr"]] == 0.5
    assert pmf[AMINO_INDEX["Cys"]] == 0.5
    assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(pmf) == 2


def test_uniform_counts_give_multiplicity_pmf():
    counts = CodonCounts(np.ones(64, dtype=np.int64))
    pmf = amino_pmf(counts)
    assert np.allclose(pmf, MULTIPLICITIES / 64.0, atol=1e-15)
    assert pmf[AMINO_INDEX["Ser"]] == pytest.approx(6 / 64, abs=1e-15)


def test_amino_pmf_requires_counts():
    with pytest.raises(ValueError):
        amino_pmf(CodonCounts())


def test_codon_usage_within_synonym_set():
    counts = count_codons(["TCA", "TCA", "TCA", "TCC"])
    usage = codon_usage(counts)
    ser = SYNONYM_INDICES[AMINO_INDEX["Ser"]]
    # canonical Ser order: AGC, AGT, TCA, TCC, TCT, TCG
    assert np.allclose(usage[ser], [0, 0, 0.75, 0.25, 0, 0], atol=1e-15)


def test_codon_usage_zero_policies():
    counts = count_codons(["TAT"])
    usage = codon_usage(counts, zero_policy="uniform_fill")
    ser = SYNONYM_INDICES[AMINO_INDEX["Ser"]]
    assert np.allclose(usage[ser], 1.0 / 6, atol=1e-15)
    with pytest.raises(ValueError, match="no codons observed"):
        codon_usage(counts, zero_policy="error")
    with pytest.raises(ValueError):
        codon_usage(counts, zero_policy="nonsense")


def test_codon_usage_uniform_counts_are_uniform():
    usage = codon_usage(CodonCounts(np.ones(64, dtype=np.int64)))
    for idx in SYNONYM_INDICES:
        assert np.allclose(usage[idx], 1.0 / len(idx), atol=1e-15)


def test_usage_blocks_always_sum_to_one():
    counts = count_codons(["TCA", "GCC", "GCC", "ATG"])
    usage = codon_usage(counts)
    for idx in SYNONYM_INDICES:
        assert usage[idx].sum() == pytest.approx(1.0, abs=1e-12)


# --- aggregation pipeline -------------------------------------------------------

def test_fixture_counts_are_documented():
    for path, expected in ((DATA / "toy_gene_a.fasta", TOY_A_COUNTS),
                           (DATA / "toy_gene_b.fasta", TOY_B_COUNTS)):
        counts = ingest_fasta(path.read_text())
        observed = {CODONS[i]: int(n) for i, n in enumerate(counts.counts) if n}
        assert observed == expected


def test_pipeline_matches_direct_translation():
    from dnacap.genetic_code import AMINO_ACIDS, translate

    text = (DATA / "toy_gene_a.fasta").read_text()
    counts = ingest_fasta(text)
    pmf = amino_pmf(counts)
    aminos = translate(frame_codons(parse_fasta(text)[0]))
    direct = np.array([aminos.count(a) / len(aminos) for a in AMINO_ACIDS])
    assert np.allclose(pmf, direct, atol=1e-15)


def test_aggregation_is_record_order_independent():
    ab = ingest_fasta(">x\nTATTGC\n>y\nGCAGCA\n")
    ba = ingest_fasta(">y\nGCAGCA\n>x\nTATTGC\n")
    assert np.array_equal(ab.counts, ba.counts)


def test_ingest_requires_sequences():
    with pytest.raises(FastaError, match="no sequences"):
        ingest_fasta("")


def test_ingest_warns_on_early_stop_codons(caplog):
    with caplog.at_level(logging.WARNING, logger="dnacap.sequences"):
        ingest_fasta(">odd\nTAAGCATAA\n")
    assert "stop codon" in caplog.text


# --- serialization ---------------------------------------------------------------

def test_counts_json_canonical_order():
    counts = count_codons(["TAT", "TGC", "TAT"])
    data = json.loads(counts.to_json())
    assert list(data.keys()) == list(CODONS)
    assert data["TAT"] == 2 and data["TGC"] == 1 and data["AAA"] == 0


def test_counts_csv_schema():
    lines = count_codons(["AAA"]).to_csv().splitlines()
    assert lines[0] == "codon,count"
    assert lines[1] == "AAA,1"
    assert len(lines) == 65


def test_amino_pmf_csv_has_21_rows():
    pmf = amino_pmf(count_codons(["TAT", "TGC"]))
    lines = amino_pmf_to_csv(pmf).splitlines()
    assert lines[0] == "amino,probability"
    assert len(lines) == 22
    assert "Tyr,0.5" in lines


def test_counts_addition():
    total = count_codons(["TAT"]) + count_codons(["TGC", "TAT"])
    assert total.total == 3
    assert total.counts[CODONS.index("TAT")] == 2
