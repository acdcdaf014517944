"""Write the golden interpretation graphs under tests/golden/.

The model trees and interpretation maps below are written by hand from
the toy grammar, node by node, without consulting the solver. Only the
[dap] section is generated, since it is a mechanical copy of the
lexical entries. Run from the repository root:

    python3 scripts/make_goldens.py
"""

from __future__ import annotations

import sys
from pathlib import Path

from igdeps.grammar import select_and_compose, toy_grammar
from igdeps.saturation import check_interpretation
from igdeps.textio import parse_ig, write_dap

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"

# name -> (sentence, index of the lexical selection, tree + interp text)
GOLDENS = {
    "apprecie": ("Jean en apprécie le goût", 0, """
[tree]
node S phon=nonempty cat<->s
node Np1-Subj parent=S phon=nonempty cat<->np funct<->subj ref=anim
node Np1-N parent=Np1-Subj phon=nonempty word=Jean@0 cat<->n
node Vmax parent=S phon=nonempty cat<->v
node Clit parent=Vmax phon=nonempty word=en@1 cat<->clit ref=inanim#9
node V parent=Vmax phon=nonempty word=apprécie@2 cat<->v
node Np2-Obj parent=S phon=nonempty cat<->np funct<->obj ref=inanim
node D parent=Np2-Obj phon=nonempty word=le@3 cat<->det funct<->det
node Np2-N parent=Np2-Obj phon=nonempty word=goût@4 cat<->n
node DeObj parent=Np2-Obj phon=empty cat<->pp funct<->deobj ref=inanim#9

[interp]
w0.Np Np1-Subj
w2.Subj Np1-Subj
w0.N Np1-N
w1.S S
w2.S S
w1.Vmax Vmax
w2.Vmax Vmax
w1.Clit Clit
w1.V V
w2.V V
w1.Np Np2-Obj
w2.Obj Np2-Obj
w4.Np Np2-Obj
w3.D D
w4.Det D
w4.N Np2-N
w1.DeObj DeObj
"""),
    "permet": ("Jean permet à Marie de venir", 0, """
[tree]
node S phon=nonempty cat<->s
node Subj parent=S phon=nonempty cat<->np funct<->subj ref=anim#1
node Subj-N parent=Subj phon=nonempty word=Jean@0 cat<->n
node Vmax parent=S phon=nonempty cat<->v
node V parent=Vmax phon=nonempty word=permet@1 cat<->v
node Aobj parent=S phon=nonempty cat<->pp funct<->aobj
node A parent=Aobj phon=nonempty word=à@2 cat<->prep
node AObj-Np parent=Aobj phon=nonempty cat<->np funct<->obj ref=anim#2
node AObj-N parent=AObj-Np phon=nonempty word=Marie@3 cat<->n
node Deobj parent=S phon=nonempty cat<->pp funct<->deobj
node De parent=Deobj phon=nonempty word=de@4 cat<->prep
node Inf parent=Deobj phon=nonempty cat<->inf funct<->obj
node InfSubj parent=Inf phon=empty cat<->np funct<->subj ref=anim#2
node InfVmax parent=Inf phon=nonempty cat<->v
node InfV parent=InfVmax phon=nonempty word=venir@5 cat<->v

[interp]
w1.S S
w0.Np Subj
w1.Subj Subj
w0.N Subj-N
w1.Vmax Vmax
w1.V V
w1.Aobj Aobj
w2.PP Aobj
w2.Prep A
w2.Obj AObj-Np
w1.AobjNp AObj-Np
w3.Np AObj-Np
w3.N AObj-N
w1.Deobj Deobj
w4.PP Deobj
w4.Prep De
w4.Inf Inf
w1.Inf Inf
w5.Sinf Inf
w1.InfSubj InfSubj
w5.Subj InfSubj
w5.Vmax InfVmax
w5.V InfV
"""),
    "promet": ("Jean promet à Marie de venir", 0, """
[tree]
node S phon=nonempty cat<->s
node Subj parent=S phon=nonempty cat<->np funct<->subj ref=anim#1
node Subj-N parent=Subj phon=nonempty word=Jean@0 cat<->n
node Vmax parent=S phon=nonempty cat<->v
node V parent=Vmax phon=nonempty word=promet@1 cat<->v
node Aobj parent=S phon=nonempty cat<->pp funct<->aobj
node A parent=Aobj phon=nonempty word=à@2 cat<->prep
node AObj-Np parent=Aobj phon=nonempty cat<->np funct<->obj ref=anim#2
node AObj-N parent=AObj-Np phon=nonempty word=Marie@3 cat<->n
node Deobj parent=S phon=nonempty cat<->pp funct<->deobj
node De parent=Deobj phon=nonempty word=de@4 cat<->prep
node Inf parent=Deobj phon=nonempty cat<->inf funct<->obj
node InfSubj parent=Inf phon=empty cat<->np funct<->subj ref=anim#1
node InfVmax parent=Inf phon=nonempty cat<->v
node InfV parent=InfVmax phon=nonempty word=venir@5 cat<->v

[interp]
w1.S S
w0.Np Subj
w1.Subj Subj
w0.N Subj-N
w1.Vmax Vmax
w1.V V
w1.Aobj Aobj
w2.PP Aobj
w2.Prep A
w2.Obj AObj-Np
w1.AobjNp AObj-Np
w3.Np AObj-Np
w3.N AObj-N
w1.Deobj Deobj
w4.PP Deobj
w4.Prep De
w4.Inf Inf
w1.Inf Inf
w5.Sinf Inf
w1.InfSubj InfSubj
w5.Subj InfSubj
w5.Vmax InfVmax
w5.V InfV
"""),
    "relative": ("la fille que Jean connaît", 1, """
[tree]
node Np phon=nonempty cat<->np ref=anim#3
node Det parent=Np phon=nonempty word=la@0 cat<->det funct<->det
node N parent=Np phon=nonempty word=fille@1 cat<->n
node Rel parent=Np phon=nonempty cat<->s funct<->mod
node Pro parent=Rel phon=nonempty word=que@2 cat<->pro
node Subj parent=Rel phon=nonempty cat<->np funct<->subj ref=anim
node Subj-N parent=Subj phon=nonempty word=Jean@3 cat<->n
node Vmax parent=Rel phon=nonempty cat<->v
node V parent=Vmax phon=nonempty word=connaît@4 cat<->v
node Tr parent=Rel phon=empty cat<->np funct<->obj ref=anim#3

[interp]
w1.Np Np
w2.Np Np
w0.D Det
w1.Det Det
w1.N N
w2.N N
w2.Rel Rel
w4.S Rel
w2.Pro Pro
w3.Np Subj
w4.Subj Subj
w3.N Subj-N
w4.Vmax Vmax
w4.V V
w2.Tr Tr
w4.Obj Tr
"""),
}


def golden_text(name: str) -> str:
    sentence, choice, body = GOLDENS[name]
    dap = select_and_compose(sentence.split(), toy_grammar())[choice]
    return write_dap(dap) + "\n" + body.strip() + "\n\n[end]\n"


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in GOLDENS:
        text = golden_text(name)
        report = check_interpretation(parse_ig(text))
        if not report.ok:
            sys.stderr.write(f"{name}: golden graph rejected\n{report.render()}")
            status = 1
        (OUT / f"{name}.ig").write_text(text, encoding="utf-8")
        print(f"wrote {OUT / name}.ig")
    return status


if __name__ == "__main__":
    sys.exit(main())
