#!/usr/bin/env python3
"""Expand the hand-transcribed polynomial tables into crates/core/data/polynomials.json.

Each entry is typed exactly as printed (factored form kept), expanded with sympy, and
written as integer-coefficient term lists. The checksum is FNV-1a over the canonical
serialization of the list and is re-verified by the library on load.
"""
import json
import pathlib

import sympy as sp

u, v, x, y, w = sp.symbols("u v x y w")

POLYS = [
    ("G1", "u v x y", """180*(7*u**3 + v**3) - 9*(11*u**2 - 31*v**2)*x
        - x**2*(213*u + 39*v + 34*x) + 162*(u**2 + v**2)*y - 5*y**2*(195*u - 15*v + 17*y)"""),
    ("G2", "u v x y w", """-720*(223958344*u**5 + 406176133*v**5)
        + (3184319633*u**4 - 197068307233*v**4 + 33362124000*w**4)*x
        + 60*(1353945577*u**3 + 878294370*v**3)*x**2 + 6*(6929323501*v**2 - 1198443520*w**2)*x**3
        - x**4*(1858938780*v + 2043544673*x) + 15*(2134148833*u**4 - 1674476673*v**4)*y
        - 1500*(154243777*u**3 + 15399378*v**3)*y**2 - 10*(11725793962*u**2 + 3577812017*v**2)*y**3
        + 7500*(43261956*u + 12682717*v)*y**4 + 71019200725*y**5"""),
    ("G3", "u v x y w", """144*(699752744*u**5 - 2362467*v**5)
        + (361371889*u**4 - 1097126369*v**4 + 1211988000*w**4)*x
        + 12*(498413977*u**3 + 838363630*v**3)*x**2 + 6*(574859825*v**2 + 326289904*w**2)*x**3
        + (1446719244*v - 436791181*x)*x**4 + 15*(158488301*u**4 + 365080659*v**4)*y
        - 300*(475629839*u**3 + 83270830*v**3)*y**2 - 10*(940591436*u**2 + 521391871*v**2)*y**3
        + 1500*(32993592*u + 10616473*v)*y**4 + 5519145425*y**5"""),
    ("G4", "u v x y", """180*u**3 + 27*u**2*(3*x - 4*y) + 7*u*(x**2 - 25*y**2)
        + 3*(20*v**3 + 8*x**3 + 5*y**3 - 9*v**2*(3*x + 4*y) - v*(7*x**2 + 25*y**2))"""),
    ("G5", "u v x y w", """927276*u**4 + 27002724*v**4 - 1508220*u**2*y**2 + 9998940*v**2*y**2
        - 8*u**3*(719719*x + 1768043*y) - 8*v**3*(1664689*x + 9604649*y)
        + 4*u*(1080301*x**3 + 3999985*y**3) + 4*v*(390017*x**3 + 7292255*y**3)
        - 49*(120000*w**4 - 137104*w**2*x**2 + 7621*x**4 - 10925*y**4)"""),
    ("G6", "u v x y w", """927276*u**4 + 27002724*v**4 - 1508220*u**2*y**2 + 9998940*v**2*y**2
        - 8*u**3*(257897*x + 1184773*y) - 8*v**3*(733055*x + 6576439*y)
        + 4*u*(548167*x**3 + 2441935*y**3) + 4*v*(222227*x**3 + 2618105*y**3)
        - 49*(120000*w**4 - 137104*w**2*x**2 + 7621*x**4 - 10925*y**4)"""),
    ("G7", "u v x y", """12*u**5*v**2 + 60*u**4*v**3 + 3*u**2*v*(4*v**4 + 61*x**2 - 150*x*y - 39*y**2)
        - 60*u*v**2*(5*v**4 + 5*x**2 + 5*x*y + 3*y**2) - 12*v**3*(5*v**4 - 4*x**2 + 44*x*y + 4*y**2)
        + u**3*(300*v**4 + 55*x**2 - 18*x*y + 15*y**2)"""),
    ("G8", "u v x y", """12*u**5*v**2 - 60*u**4*v**3 + 12*v**3*(5*v**4 + 4*x**2 - 44*x*y - 4*y**2)
        - 60*u*v**2*(5*v**4 + 3*x**2 - 5*x*y + 5*y**2) + u**3*(300*v**4 + 15*x**2 + 18*x*y + 55*y**2)
        - 3*u**2*v*(4*v**4 - 39*x**2 + 150*x*y + 61*y**2)"""),
    ("G9", "u v x y w", """738713*u**8 + 105264*u**7*v - 109300*u**6*v**2 - 339760*u**5*v**3
        + 2*u**4*(764115*v**4 + 1803136*w - 708480*x**2) + 80*u**3*(33729*v**5 - 349760*v*w)
        - 20*u**2*(136625*v**6 - 763776*v**2*w) - 2546000*u*v**7 + 3415625*v**8
        + 6400*v**4*(695*w + 1216*x**2 - 109*y**2)
        + 64*(2023440*w**2 - 8*w*(8049*x**2 + 2936*x*y + 32151*y**2)
              - 142563*x**4 - 33071418*x**2*y**2 - 228288*x*y**3 - 34771*y**4)"""),
    # the printed brace group opens a stray parenthesis that is never closed; it is dropped
    ("G10", "u v x y w", """1564813*u**8 - 315792*u**7*v - 127492*u**6*v**2 + 1019280*u**5*v**3
        - 6*u**4*(194875*v**4 + 1803136*w - 708480*x**2) - 16*u**3*(505935*v**5 + 2039872*v*w)
        - 20*u**2*(159365*v**6 + 2291328*v**2*w) + 7638000*u*v**7 + 3984125*v**8
        - 19200*v**4*(695*w + 1216*x**2 - 109*y**2)
        + 64*(1558352*w**2 + 40*w*(29311*x**2 + 301704*x*y - 5191*y**2)
              + 277889*x**4 - 65865346*x**2*y**2 + 684864*x*y**3 - 45487*y**4)"""),
    ("G11", "x y", """x**8*(x**15 + 171*x**10*y**5 + 247*x**5*y**10 - 57*y**15)
        *(x**25 - 435*x**20*y**5 - 6670*x**15*y**10 - 3335*x**5*y**20 + 87*y**25)"""),
    ("G12", "x y", """y**8*(57*x**15 + 247*x**10*y**5 - 171*x**5*y**10 + y**15)
        *(87*x**25 + 3335*x**20*y**5 + 6670*x**10*y**15 - 435*x**5*y**20 - y**25)"""),
    ("G13", "x y", """x**4*y**9*(4408*x**35 + 105792*x**30*y**5 + 255432*x**25*y**10 - 39585*x**20*y**15
        + 224280*x**15*y**20 - 110124*x**10*y**25 + 4144*x**5*y**30 - 6*y**35)"""),
    ("F1", "x y", """y*(26*x**150 - 14027*x**145*y**5 + 4302519*x**140*y**10 - 1108131323*x**135*y**15
        + 352658709221*x**130*y**20 + 410367539820195*x**125*y**25 + 40445085344188305*x**120*y**30
        + 1299280606676985415*x**115*y**35 + 15619328979178395195*x**110*y**40
        + 55612071446837334235*x**105*y**45 - 87018500083008224035*x**100*y**50
        - 533269157005860756105*x**95*y**55 - 788818605648335112065*x**90*y**60
        - 1013858166164551300020*x**85*y**65 - 296448112259269579710*x**80*y**70
        - 1142271481069396890795*x**75*y**75 + 1168196293014645641265*x**70*y**80
        - 2113215283984202178330*x**65*y**85 + 2233117451140029299360*x**60*y**90
        - 1786660513705581667220*x**55*y**95 + 791868758851817951430*x**50*y**100
        - 151112565855362432510*x**45*y**105 + 12466416846335713220*x**40*y**110
        - 431194652630175240*x**35*y**115 + 5161178221901730*x**30*y**120
        - 5636816703218*x**25*y**125 - 22864978164*x**20*y**130 - 122736542*x**15*y**135
        - 623536*x**10*y**140 - 2403*x**5*y**145 - 5*y**150)"""),
    ("F2", "x y", """x**5*y*(-x**155 + 2795*x**150*y**5 - 1610905*x**145*y**10 + 626661790*x**140*y**15
        - 272934105110*x**135*y**20 + 5921185002218*x**130*y**25 + 2403876207873450*x**125*y**30
        + 76784270584164950*x**120*y**35 + 772577150281220900*x**115*y**40
        - 2601547321924922600*x**110*y**45 - 132050328432197323010*x**105*y**50
        - 761932811447226146950*x**100*y**55 - 646462771950208704200*x**95*y**60
        - 2253288292561296417525*x**90*y**65 - 1120714651267256252025*x**85*y**70
        - 4859622107798545477335*x**80*y**75 + 1377006603588253977975*x**75*y**80
        - 5767727038509251934525*x**70*y**85 + 2918064034868992877075*x**65*y**90
        - 2471409054146940922300*x**60*y**95 + 203085067837087672160*x**55*y**100
        - 317362540657481937650*x**50*y**105 + 61492360597697519350*x**45*y**110
        + 350110675044144200*x**40*y**115 - 419469534314529300*x**35*y**120
        + 21455464506696458*x**30*y**125 - 543093587090560*x**25*y**130
        + 5212276736290*x**20*y**135 + 16214520280*x**15*y**140
        + 62528105*x**10*y**145 + 202921*x**5*y**150 + 375*y**155)"""),
    ("F3", "x y", """-x*(3*x**90 - 903*x**85*y**5 + 159961*x**80*y**10 - 28650647*x**75*y**15
        - 13575756015*x**70*y**20 - 474499473257*x**65*y**25 - 4010788885483*x**60*y**30
        - 7747481577039*x**55*y**35 - 5318572158667*x**50*y**40 - 5669746887385*x**45*y**45
        + 1236811165611*x**40*y**50 - 3418602513421*x**35*y**55 + 633550350937*x**30*y**60
        + 416362598871*x**25*y**65 - 52095354335*x**20*y**70
        + 1196042149*x**15*y**75 - 1716384*x**10*y**80 - 6032*x**5*y**85 - 16*y**90)"""),
    ("F4", "x y", """-x*y**5*(231*x**95 - 87604*x**90*y**5 + 25209980*x**85*y**10 + 1278608345*x**80*y**15
        + 28385930062*x**75*y**20 - 156161181524*x**70*y**25 - 3918089501554*x**65*y**30
        + 2542402356410*x**60*y**35 - 21700694333270*x**55*y**40 - 5108101637858*x**50*y**45
        - 21968910753568*x**45*y**50 - 1511305888168*x**40*y**55 - 8123129966420*x**35*y**60
        + 467241056080*x**30*y**65 + 38837423474*x**25*y**70 - 5177696692*x**20*y**75
        + 111522673*x**15*y**80 + 1101610*x**10*y**85 + 2000*x**5*y**90 + y**95)"""),
    ("B.e.G", "u v x y", """60*(3*u**3 + v**3) + 81*(u - v)*(u + v)*x - (5*u + 9*v - 12*x)*x**2
        - 108*(u**2 + v**2)*y - 25*(7*u + 3*v)*y**2 + 15*y**3"""),
    ("B.m.P", "x y", """x**30 + 6*x**25*y**5 + 1875*x**20*y**10 - 6080*x**15*y**15 + 18135*x**10*y**20
        - 1038*x**5*y**25 - 3*y**30"""),
    ("B.m.Q", "x y", "x**6*y**4*(3*x**20 + 134*x**15*y**5 + 57*x**10*y**10 + 216*x**5*y**15 - 22*y**20)"),
    ("B.m.R", "x y", """y**5*(132*x**30 + 2970*x**25*y**5 - 1520*x**20*y**10 + 7035*x**15*y**15
        - 390*x**5*y**25 - y**30)"""),
    ("B.m.S", "x y", "x**4*y**6*(22*x**20 + 216*x**15*y**5 - 57*x**10*y**10 + 134*x**5*y**15 - 3*y**20)"),
    ("B.o.P", "x y", """x**5*(4*x**25 - 435*x**20*y**5 - 37265*x**15*y**10 - 44080*x**10*y**15
        - 2755*x**5*y**20 + 1653*y**25)"""),
    ("B.o.Q", "x y", "x**9*y*(x**20 + 203*x**15*y**5 - 406*x**10*y**10 - 1653*x**5*y**15 + 551*y**20)"),
    ("B.o.R", "x y", """y**5*(1653*x**25 + 2755*x**20*y**5 - 44080*x**15*y**10 + 37265*x**10*y**15
        - 435*x**5*y**20 - 4*y**25)"""),
    ("B.o.S", "x y", "x*y**9*(551*x**20 + 1653*x**15*y**5 - 406*x**10*y**10 - 203*x**5*y**15 + y**20)"),
    ("C.c.P", "x y", """x*(2*x**60 - 423*x**55*y**5 + 62386*x**50*y**10 + 17130550*x**45*y**15
        + 257495595*x**40*y**20 + 449723758*x**35*y**25 + 110860458*x**30*y**30
        + 274470804*x**25*y**35 - 44451050*x**20*y**40 - 31757435*x**15*y**45
        + 1691208*x**10*y**50 - 3542*x**5*y**55 - 11*y**60)"""),
    ("C.c.Q", "x y", """x*y**5*(159*x**65 - 51748*x**60*y**5 - 1801195*x**55*y**10 - 11218651*x**50*y**15
        + 431478190*x**45*y**20 - 348592259*x**40*y**25 + 1688812058*x**35*y**30
        + 402533490*x**30*y**35 + 852888611*x**25*y**40 - 3573970*x**20*y**45
        - 4304879*x**15*y**50 + 269233*x**10*y**55 + 1760*x**5*y**60 + y**65)"""),
    ("C.d.P", "x y", """y*(6*x**30 + 1642*x**25*y**5 - 1440*x**20*y**10 - 20615*x**15*y**15
        + 12665*x**10*y**20 - 123*x**5*y**25 - y**30)"""),
    ("C.d.Q", "x y", """x**5*y*(x**10 - 11*x**5*y**5 - y**10)
        *(x**25 - 435*x**20*y**5 - 6670*x**15*y**10 - 3335*x**5*y**20 + 87*y**25)"""),
]


def expand(name, variables, text):
    syms = sp.symbols(variables)
    p = sp.Poly(sp.sympify(text, locals={s.name: s for s in syms}), *syms)
    terms = [[str(int(c)), [int(e) for e in mon]] for mon, c in sorted(p.terms(), reverse=True)]
    return {"name": name, "degree": int(p.total_degree()), "variables": [s.name for s in syms], "terms": terms}


def fnv1a(s):
    h = 0xCBF29CE484222325
    for b in s.encode():
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def main():
    polys = [expand(*p) for p in POLYS]
    canon = json.dumps(polys, separators=(",", ":"), ensure_ascii=False)
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/polynomials.json"
    out.write_text(json.dumps({"checksum": fnv1a(canon), "polynomials": polys}, indent=1) + "\n")
    for p in polys:
        print(f"{p['name']:6} degree {p['degree']:3} terms {len(p['terms'])}")


if __name__ == "__main__":
    main()
