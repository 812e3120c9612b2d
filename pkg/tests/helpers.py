from authorcredit.canon import Category

def article(id_, authors, contributions, year=2012):
    return {
        "id": id_,
        "year": year,
        "authors": authors,
        "contributions": [{"text": t, "acronyms": a} for t, a in contributions],
    }


# Every grouped phrase from the source methodology, with its category.
LISTED_PHRASES = [
    ("analyzed the data", Category.ANALYZED_DATA),
    ("interpretated the data", Category.ANALYZED_DATA),
    ("statistical analysis", Category.ANALYZED_DATA),
    ("performed a statistical analysis", Category.ANALYZED_DATA),
    ("interpreted the results", Category.ANALYZED_DATA),
    ("data interpretation", Category.ANALYZED_DATA),
    ("contributed to the discussion", Category.ANALYZED_DATA),
    ("conceived the experiments", Category.CONCEIVED_EXPERIMENTS),
    ("conceived and designed the experiments", Category.CONCEIVED_EXPERIMENTS),
    ("designed the software used in the analysis", Category.CONCEIVED_EXPERIMENTS),
    ("designed the study", Category.CONCEIVED_EXPERIMENTS),
    ("designed the experiments", Category.CONCEIVED_EXPERIMENTS),
    ("conceived and designed the study", Category.CONCEIVED_EXPERIMENTS),
    ("performed the experiments", Category.PERFORMED_EXPERIMENTS),
    ("wrote the paper", Category.WROTE_PAPER),
    ("wrote the manuscript", Category.WROTE_PAPER),
    ("contributed writing the manuscript", Category.WROTE_PAPER),
    ("collected the data", Category.COLLECTED_DATA),
    ("contributed with reagent materials and analysis tools", Category.COLLECTED_DATA),
    ("revised the manuscript", Category.REVISED_MANUSCRIPT),
    ("edited the manuscript", Category.REVISED_MANUSCRIPT),
    ("reviewed the manuscript", Category.REVISED_MANUSCRIPT),
    ("read and approved the final manuscript", Category.REVISED_MANUSCRIPT),
    ("critical revision of the manuscript", Category.REVISED_MANUSCRIPT),
    ("critically revised the manuscript", Category.REVISED_MANUSCRIPT),
    ("critical review of the manuscript", Category.REVISED_MANUSCRIPT),
    ("revised the paper", Category.REVISED_MANUSCRIPT),
    ("edited the paper", Category.REVISED_MANUSCRIPT),
    ("reviewed and edited the manuscript", Category.REVISED_MANUSCRIPT),
    ("critically reviewed the manuscript", Category.REVISED_MANUSCRIPT),
]
