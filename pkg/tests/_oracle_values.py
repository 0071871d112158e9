"""Frozen high-precision reference values.

Generated by tools/gen_oracle_values.py (mpmath, 60 digits) and pasted
verbatim; regenerate with the same command if entries are added. Keys
name the quantity and its parameters.
"""

ORACLE = {
    "A1[q=1.5]": 0.87401918476404,
    "A1[q=2]": 0.7853981633974483,
    "A1[q=3]": 0.6666666666666666,
    "A1[q=4.7]": 0.5483730722882091,
    "A1[p=2,q=2]": 0.7853981633974483,
    "A2[p=2,q=2]": 0.05234234437596477,
    "A3[p=2,q=2]": 0.19105305608358542,
    "A4[p=2,q=2]": -0.005830266186593042,
    "A5[p=2,q=2]": 0.03701162665144624,
    "A6[p=2,q=2]": -0.1216281530740629,
    "A1[p=3,q=2]": 0.7853981633974483,
    "A2[p=3,q=2]": 0.0696302876027042,
    "A3[p=3,q=2]": 0.238732414637843,
    "A4[p=3,q=2]": -0.012665147955292222,
    "A5[p=3,q=2]": 0.0348151438013521,
    "A1[p=2.5,q=3]": 0.6666666666666666,
    "A2[p=2.5,q=3]": 0.05234855616866384,
    "A3[p=2.5,q=3]": 0.2127627900957738,
    "A4[p=2.5,q=3]": 0.0010722476757988643,
    "A5[p=2.5,q=3]": 0.035854702477584266,
    "A6[p=2.5,q=3]": -0.18059866533208402,
    "A1[p=5,q=2]": 0.7853981633974483,
    "A2[p=5,q=2]": 0.1259976632810838,
    "A3[p=5,q=2]": 0.3978873577297383,
    "A4[p=5,q=2]": -0.03377372788077926,
    "A5[p=5,q=2]": 0.03149941582027095,
    "A6[p=5,q=2]": 0.12665147955292222,
    "C1[p=2]": 1.8452994616207485,
    "C1[p=2.5]": 2.3564072538557697,
    "C1[p=3]": 2.8284271247461903,
    "C1[p=5]": 4.562075977805678,
    "Cq[p=5,q=2]": 2.281037988902839,
    "Cq[p=2,q=2]": 3.690598923241497,
    "Cq[p=2.5,q=3]": 3.7587201078677817,
    "Cq[p=2,q=3]": 4.4287187078897965,
    "Cq[p=3,q=2]": 2.8284271247461903,
    "J[p=3,eps=0.5,q=0]": 2.0021547609122123,
    "J[p=3,eps=0.5,q=2]": 1.0517068902101783,
    "J[p=3,eps=0.5,q=4]": 0.8023969463149295,
    "J[p=2,eps=0.9,q=0]": 1.6421294560812851,
    "J[p=2,eps=0.9,q=2]": 0.8247114636204708,
    "J[p=5,eps=1e-6,q=0]": 8.49678211082354,
    "J[p=5,eps=1e-6,q=2]": 7.356266794505438,
    "gamma[p=3,k=1]": 10.621978949700129,
    "d[p=3,k=1]": 0.7093420166270137,
    "eps[p=3,k=1]": 0.9058555844691981,
    "w4[p=3,k=1]": 0.7841927198174722,
    "gamma[p=2,k=1]": 10.719443258639462,
    "d[p=2,k=1]": 0.7085612333991772,
    "eps[p=2,k=1]": 0.9067115729919986,
    "gamma[p=5,k=2]": 21.019920317955773,
    "d[p=5,k=2]": 1.5085288682776459,
    "eps[p=5,k=2]": 0.23881728579473366,
    "gamma[p=3,d=1]": 11.360340549384306,
    "k[p=3,d=1]": 1.405452724700649,
    "k[p=2,gamma=15]": 6.001570617870606,
    "d[p=2,gamma=15]": 4.2955517311978655,
    "k[p=3,gamma=20]": 3.602765607593242,
    "d[p=3,gamma=20]": 2.6491718452738686,
    "T[p=3,k=1,gamma=2]": 1.4157372084259563,
    "x_at_half[p=3,k=1]": 0.1649293954801776,
}
