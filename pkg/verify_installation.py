#!/usr/bin/env python3
"""
Installation Verification Script
Run after installation to check the stack, the bundled models and the audit graph.
"""

import sys
import os
import importlib
from pathlib import Path


def check_python_version():
    """Check Python version"""
    print("🐍 Checking Python version...")
    version = sys.version_info
    if version >= (3, 9):
        print(f"   ✅ Python {version.major}.{version.minor}.{version.micro} (Good)")
        return True
    print(f"   ❌ Python {version.major}.{version.minor}.{version.micro} (Need 3.9+)")
    return False


def check_package_imports():
    """Check that all required packages can be imported"""
    print("\n📦 Checking package imports...")

    packages = {
        "numpy": "numpy",
        "pandas": "pandas",
        "pydantic": "pydantic",
        "python-dotenv": "dotenv",
        "langgraph": "langgraph",
        "pytest": "pytest",
        "hypothesis": "hypothesis",
    }

    results = []
    for package, module in packages.items():
        try:
            importlib.import_module(module)
            print(f"   ✅ {package}")
            results.append(True)
        except ImportError as e:
            print(f"   ❌ {package} - {e}")
            results.append(False)

    return all(results)


def check_bundled_models():
    """Load and validate every bundled model file"""
    print("\n📁 Checking bundled models...")

    from boundary_system import validate_all
    from model_files import load_model

    models_dir = Path(os.getenv("ORDINAL_MODELS_DIR", "models"))
    paths = sorted(models_dir.glob("*.model"))
    if not paths:
        print(f"   ❌ no model files in {models_dir}")
        return False

    results = []
    for path in paths:
        try:
            instance = load_model(path)
            reports = validate_all(instance.system, instance.model, (2, 3))
            failed = [c for c, r in reports.items() if not r.is_valid]
            status = "validated" if not failed else f"conditions {', '.join(failed)} fail"
            print(f"   ✅ {path.name}: {instance.kind}, {instance.system.M} classes, {status}")
            results.append(not failed)
        except Exception as e:
            print(f"   ❌ {path.name} - {e}")
            results.append(False)

    return all(results)


def check_audit_graph():
    """Compile the audit graph and run one property on the first example"""
    print("\n🤖 Testing audit workflow...")

    try:
        from audit_graph import AuditGraph
        from model_files import load_model

        instance = load_model(Path(os.getenv("ORDINAL_MODELS_DIR", "models")) / "example1.model")
        outcome = AuditGraph(verbose=False).run(instance, properties=["conformity"], grid_samples=0)
        print(f"   ✅ Audit graph ran: {outcome['report'].statuses()}")
        return outcome["success"]

    except Exception as e:
        print(f"   ❌ Audit workflow test failed: {e}")
        return False


CHECKS = [
    ("Python Version", check_python_version, "Install Python 3.9 or newer"),
    ("Package Imports", check_package_imports, "Try: pip install -r requirements.txt"),
    ("Bundled Models", check_bundled_models, "Run from the repository root or set ORDINAL_MODELS_DIR"),
    ("Audit Workflow", check_audit_graph, "Run pytest test_audit_graph.py for details"),
]


def run_verification() -> bool:
    """Run every check; True when all of them pass"""
    print("🔍 Ordinal Classification Engine Installation Verification")
    print("=" * 50)

    from dotenv import load_dotenv
    load_dotenv()

    failed = []
    for name, check, hint in CHECKS:
        try:
            ok = check()
        except Exception as e:
            print(f"   ❌ {name} raised: {e}")
            ok = False
        if not ok:
            failed.append((name, hint))

    print("\n" + "=" * 50)
    print(f"📊 {len(CHECKS) - len(failed)}/{len(CHECKS)} checks passed")

    if not failed:
        print("🎉 Installation verification SUCCESSFUL!")
        print("  • Run: python main.py validate example1.model")
        print("  • Or: python main.py check example2.model --grid-samples 64")
        return True

    print("⚠️  Installation verification FAILED!")
    for name, hint in failed:
        print(f"  • {name}: {hint}")
    print("  • See INSTALLATION_GUIDE.md for detailed help")
    return False


if __name__ == "__main__":
    sys.exit(0 if run_verification() else 1)
