# python -m pytest tests/test_utilities.py

from padiz.utilities import tag_examples


def test_tag_examples_keeps_sampling_order():
    entries = [{'tag': tag, 'n': n} for n, tag in enumerate(['A0', 'A1', 'A0', 'A0', 'C1', 'A1', 'A1'])]
    kept = tag_examples(entries, lambda e: e['tag'])
    assert [e['n'] for e in kept] == [0, 1, 2, 4, 5]
    assert [e['n'] for e in tag_examples(entries, lambda e: e['tag'], num=1)] == [0, 1, 4]
    assert tag_examples(entries, lambda e: e['tag'], num=0) == []
    assert tag_examples([], lambda e: e['tag']) == []
