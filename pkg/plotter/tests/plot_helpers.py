"""Shared fixture data for the plotter tests: small hand-written CSVs in the
simulator's sweep and ratio schemas."""

# 3x3 (t, t_c) grid with delta_c = t - t_c: zero diagonal, antisymmetric sign
GRID_CSV = """t,t_c,c_ab,c_abc,delta_c,q_a,q_b,q_c,q_dep,t_eff_1,t_eff_2,residual,error
1,1,0.1,0.1,0,0.01,-0.01,0,0,1,1,1e-12,
1,2,0.1,0.05,-1,0.01,-0.005,-0.005,0,1,1,1e-12,
1,3,0.1,0.02,-2,0.01,-0.002,-0.008,0,1,1,1e-12,
2,1,0.2,0.25,1,0.02,-0.01,-0.01,0,2,2,1e-12,
2,2,0.2,0.2,0,0.02,-0.02,0,0,2,2,1e-12,
2,3,0.2,0.15,-1,0.02,-0.015,-0.005,0,2,2,1e-12,
3,1,0.3,0.4,2,0.03,-0.02,-0.01,0,3,3,1e-12,
3,2,0.3,0.35,1,0.03,-0.025,-0.005,0,3,3,1e-12,
3,3,0.3,0.3,0,0.03,-0.03,0,0,3,3,1e-12,
"""

# single t_c axis; q_c crosses zero between 3 (-0.01) and 4 (+0.01)
PANEL_CSV = """t_c,c_ab,c_abc,delta_c,q_a,q_b,q_c,q_dep,t_eff_1,t_eff_2,residual,error
1,0.2,0.30,0.10,0.1,-0.05,-0.05,0,5,5,1e-12,
2,0.2,0.26,0.06,0.1,-0.07,-0.03,0,5,5,1e-12,
3,0.2,0.22,0.02,0.1,-0.09,-0.01,0,5,5,1e-12,
4,0.2,0.18,-0.02,0.1,-0.11,0.01,0,5,5,1e-12,
5,0.2,0.14,-0.06,0.1,-0.13,0.03,0,5,5,1e-12,
"""

# one failed row: numeric fields empty, message in the error column
FAILED_ROW_CSV = """t_c,c_ab,c_abc,delta_c,q_a,q_b,q_c,q_dep,t_eff_1,t_eff_2,residual,error
1,0.2,0.30,0.10,0.1,-0.05,-0.05,0,5,5,1e-12,
2,,,,,,,,,,,negative transition frequency
3,0.2,0.22,0.02,0.1,-0.09,-0.01,0,5,5,1e-12,
"""

# 2x2 (t, t_c) grid where one point failed: the axis cells are still written,
# only the observables are blank
FAILED_GRID_CSV = """t,t_c,c_ab,c_abc,delta_c,q_a,q_b,q_c,q_dep,t_eff_1,t_eff_2,residual,error
1,1,0.1,0.1,0,0.01,-0.01,0,0,1,1,1e-12,
1,2,0.1,0.05,-1,0.01,-0.005,-0.005,0,1,1,1e-12,
2,1,,,,,,,,,,,eigenbasis splitting exceeds mean energy
2,2,0.2,0.2,0,0.02,-0.02,0,0,2,2,1e-12,
"""

RATIO_CSV = """# t_grid_start = 2.5
# t_grid_stop = 40.0
# t_grid_count = 16
# t_c_rule = t_c < t on the same grid
omega,c_eq,c_neq,ratio
6,0.1,0.15,1.5
8,0.12,0.15,1.25
10,0.15,0.15,1
"""


def write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)
