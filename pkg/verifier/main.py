# main.py - command-line entry point
import os
import sys

print("=== Starting Kummer-Chow verifier ===", file=sys.stderr)

# Ensure current directory is in Python path
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

package_dir = os.path.join(current_dir, "kummer_chow_verifier")
if not os.path.exists(package_dir):
    print(f"❌ Package directory not found: {package_dir}", file=sys.stderr)
    sys.exit(2)

try:
    from kummer_chow_verifier import root_suite
    from kummer_chow_verifier.cli import main
    print(f"✅ Package import successful: {root_suite.name} ({len(root_suite.checks)} checks)", file=sys.stderr)
except Exception as e:
    print(f"❌ Package import failed: {e}", file=sys.stderr)
    import traceback
    traceback.print_exc()
    sys.exit(2)

if __name__ == "__main__":
    print(f"🚀 Running: {' '.join(sys.argv[1:]) or '(no command)'}", file=sys.stderr)
    sys.exit(main())
