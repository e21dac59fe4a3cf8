"""Regenerate the CSV datasets under data/.

iris.csv is Fisher's iris (150x4, 3 classes) taken from scikit-learn.
diabetes_synth.csv is a seeded synthetic two-class dataset with the same
shape as the Pima diabetes table (768x8): a few strongly informative
attributes, a few weak ones, two redundant ones, and some missing cells,
so that backward elimination has structure to find.
"""
import csv
import pathlib

import numpy as np

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"
SEED = 20260816


def write_iris(path):
    from sklearn.datasets import load_iris

    raw = load_iris()
    header = ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row, target in zip(raw.data, raw.target):
            w.writerow([f"{v:.1f}" for v in row] + [raw.target_names[target]])


def write_diabetes(path, n=768):
    rng = np.random.default_rng(SEED)
    y = (rng.random(n) < 0.35).astype(int)
    pos = y == 1

    glucose = np.where(pos, rng.normal(143.0, 28.0, n), rng.normal(108.0, 22.0, n))
    glucose = np.clip(glucose, 55.0, 200.0)
    bmi = np.where(pos, rng.normal(35.3, 6.5, n), rng.normal(30.5, 6.2, n))
    bmi = np.clip(bmi, 18.0, 60.0)
    age = 21.0 + rng.gamma(np.where(pos, 2.6, 2.2), np.where(pos, 6.0, 5.2), n)
    age = np.clip(age, 21.0, 81.0)
    pedigree = rng.lognormal(np.where(pos, -0.85, -1.05), 0.55, n)
    pedigree = np.clip(pedigree, 0.08, 2.4)
    pregnancies = rng.poisson(np.where(pos, 4.3, 2.9), n)
    pressure = rng.normal(np.where(pos, 74.0, 71.0), 11.0, n)
    pressure = np.clip(pressure, 40.0, 110.0)
    skin = 0.75 * bmi + rng.normal(6.0, 4.5, n)
    skin = np.clip(skin, 7.0, 60.0)
    insulin = 1.4 * glucose - 80.0 + rng.normal(0.0, 38.0, n)
    insulin = np.clip(insulin, 15.0, 400.0)

    cols = [
        ("pregnancies", pregnancies, "{:d}", 0.0),
        ("glucose", glucose, "{:.0f}", 0.0),
        ("blood_pressure", pressure, "{:.0f}", 0.01),
        ("skin_thickness", skin, "{:.0f}", 0.04),
        ("insulin", insulin, "{:.0f}", 0.08),
        ("bmi", bmi, "{:.1f}", 0.0),
        ("pedigree", pedigree, "{:.3f}", 0.0),
        ("age", age, "{:.0f}", 0.0),
    ]
    missing = {name: rng.random(n) < rate for name, _, _, rate in cols}
    labels = np.where(y == 1, "pos", "neg")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([name for name, _, _, _ in cols] + ["outcome"])
        for i in range(n):
            row = []
            for name, values, fmt, _ in cols:
                if missing[name][i]:
                    row.append("?")
                else:
                    v = values[i]
                    row.append(fmt.format(int(v) if fmt == "{:d}" else float(v)))
            row.append(labels[i])
            w.writerow(row)


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    write_iris(DATA_DIR / "iris.csv")
    write_diabetes(DATA_DIR / "diabetes_synth.csv")
    print(f"wrote {DATA_DIR / 'iris.csv'} and {DATA_DIR / 'diabetes_synth.csv'}")


if __name__ == "__main__":
    main()
