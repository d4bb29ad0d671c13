import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from twoint.formula import Atom, definiens
from twoint.kernel import Judgment, Mode
from twoint.script import parse_script

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"

A = Atom("a")
DEF_A = definiens(A)

# (file, expected judgment, expected open hypotheses)
GOLDEN = {
    "snotI+": ("snot_intro_pos.2int", Judgment(set(), {A}, Mode.PROOF, DEF_A), (set(), {A})),
    "snotI-": ("snot_intro_neg.2int", Judgment({A}, set(), Mode.DUAL, DEF_A), ({A}, set())),
    "snotE+": ("snot_elim_pos.2int", Judgment({DEF_A}, set(), Mode.DUAL, A), ({DEF_A}, set())),
    "snotE-": ("snot_elim_neg.2int", Judgment(set(), {DEF_A}, Mode.PROOF, A), (set(), {DEF_A})),
}


def load_golden(name):
    fname, judgment, _ = GOLDEN[name]
    j, tree = parse_script((CORPUS / fname).read_text(encoding="utf-8"))
    return tree, j


@pytest.fixture(params=sorted(GOLDEN))
def golden(request):
    tree, j = load_golden(request.param)
    return request.param, tree, j
