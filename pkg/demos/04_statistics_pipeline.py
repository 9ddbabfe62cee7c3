"""From score tables to correlations and group comparisons.

Uses the bundled demo manifest (five countries, one year) together with the
bundled distance table. Five rows are too few for meaningful inference, so
the point is the shape of the pipeline, not the numbers.
"""

from importlib import resources

from langdist.core import Method, bundled_table1
from langdist.ingest import parse_country_language_csv, parse_manifest, parse_scores_csv
from langdist.report import build_frames, corr_report, describe_report, manova_report, render

manifest = parse_manifest(resources.files("langdist").joinpath("data/demo/manifest.txt"))
distances = bundled_table1()
cmap = parse_country_language_csv(manifest.countries, known=distances)
scores = [parse_scores_csv(path) for path in manifest.scores.values()]

print(render(describe_report(scores, cmap), "markdown"))

frames = build_frames(scores, cmap, distances, list(Method))
for frame in frames:
    print(frame.method.value, dict(zip(frame.countries, frame.distances)))
print()
print(render(corr_report(frames), "markdown"))

# Group comparison on the embedding distance, splitting the five countries
# at a cutline that leaves both groups with at least two members.
embedding = [f for f in frames if f.method is Method.EMBEDDING]
print(render(manova_report(embedding, {Method.EMBEDDING: 0.25}), "markdown"))
