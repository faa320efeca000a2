import math

import pytest

import hostdet


def keyword_tsv(task, rows):
    lines = ["id\ttext\tlabels"]
    for i, (text, labels) in enumerate(rows):
        lines.append(f"{i}\t{text}\t{labels}")
    return "\n".join(lines) + "\n"


def test_normalize_and_ngrams():
    assert hostdet.normalize("COVID19 is REAL!!! 100%") == ["covid", "is", "real"]
    assert hostdet.ngrams(["a", "b", "c"], 1, 2) == ["a", "b", "c", "a b", "b c"]


def test_tfidf_micro_example():
    vocab = hostdet.Vocabulary.fit([["corona", "vaccine", "corona"], ["vaccine", "hoax"]])
    assert vocab.terms == ["corona", "vaccine", "hoax"]
    row = vocab.transform(["corona", "vaccine", "corona"])
    idf = math.log(1.5) + 1.0
    norm = math.sqrt(4 * idf * idf + 1.0)
    assert row[0] == pytest.approx(2 * idf / norm, abs=1e-12)
    assert row[1] == pytest.approx(1.0 / norm, abs=1e-12)
    assert row[2] == 0.0


def test_sgns_zero_vectors():
    r = hostdet.sgns_pair_loss([0.0] * 3, [0.0] * 3, [[0.0] * 3])
    assert r["loss"] == pytest.approx(2 * math.log(2))


def test_svm_textbook_case():
    model = hostdet.train_linear_svm([[1.0], [-1.0]], [1, -1], tol=1e-10, fit_bias=False)
    assert model.weights[0] == pytest.approx(1.0, abs=1e-8)
    assert model.decision_score([0.5]) == pytest.approx(0.5, abs=1e-8)


def test_metrics_reference_counts():
    actual = ["real"] * 1120 + ["fake"] * 1020
    predicted = ["real"] * 1047 + ["fake"] * 73 + ["real"] * 47 + ["fake"] * 973
    report = hostdet.evaluate_binary(actual, predicted)
    assert report["weighted_f1"] == pytest.approx(0.9439, abs=5e-4)
    assert report["confusion"]["counts"] == [[1047, 73], [47, 973]]
    fg = hostdet.fine_grained_f1([21.74, 63.33, 46.67, 57.91], [169, 334, 237, 219])
    assert fg == pytest.approx(50.66, abs=0.05)


def test_multilabel_report():
    sets = ["fake", "non-hostile", "defame,offensive"]
    report = hostdet.evaluate_multilabel(sets, sets)
    assert report["coarse_grained_f1"] == 1.0
    assert report["fine_grained_f1"] == 1.0


def test_parse_errors_raise():
    with pytest.raises(hostdet.DatasetError, match="line 2"):
        hostdet.parse_dataset("id\ttext\tlabels\n1\tx\tsatire\n", "a")


def test_train_predict_save_load():
    rows = [(f"verified{c} common{c}", "real") for c in "abcdef"]
    rows += [(f"hoax{c} common{c}", "fake") for c in "abcdef"]
    clf = hostdet.TextClassifier.train(keyword_tsv("a", rows), "a", "svm-tfidf")
    assert clf.predict("hoaxb") == "fake"
    assert clf.predict("verifiedc") == "real"
    again = hostdet.TextClassifier.load(clf.save())
    assert again.save() == clf.save()
    assert again.scores("hoaxa commonb") == clf.scores("hoaxa commonb")
    with pytest.raises(hostdet.ModelError):
        hostdet.TextClassifier.load(clf.save()[:100])


def test_run_cli_usage_error():
    code, _, err = hostdet.run_cli(["train", "--task", "a"])
    assert code == 3
    assert err
