import census
import cli
import report


def print_report(document):
    print(report.to_text(document))


def run_builtin(name):
    tri = census.load_builtin(name)
    source = f"builtin {name}"

    # 1. Triangulation summary, cusps and dimensions
    print_report(report.info_document(tri, source))

    # 2. Canonical basis and edge pairings
    print_report(report.basis_document(tri, source))

    # 3. Q-matching system
    print_report(report.qmatch_document(tri, source))

    # 4. Fundamental solutions with compactness and boundary classes
    print_report(report.enumerate_document(tri, source, builtin=name))

    # 5. Image index of the boundary map
    print_report(report.boundary_document(tri, source, index=True, builtin=name))


def run_representatives():
    tri = census.load_builtin("figure8")
    for label, vector in census.FIGURE8_REPRESENTATIVES.items():
        q = census.from_reading("figure8", vector)
        print_report(report.boundary_document(tri, f"figure8 {label}", vector=q))
    tri = census.load_builtin("gieseking")
    for label, vector in census.GIESEKING_GENERATORS.items():
        q = census.from_reading("gieseking", vector)
        print_report(report.boundary_document(tri, f"gieseking {label}", vector=q))


def main():
    cli.configure_logging(verbose=False)

    # 1. Figure-8 knot complement
    run_builtin("figure8")

    # 2. Gieseking manifold
    run_builtin("gieseking")

    # 3. Boundary classes of the worked solutions
    run_representatives()


if __name__ == "__main__":
    main()
