from .scripts.cli import main

# Console entrypoint: `terra-sim run --config concrete-6m`
if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
