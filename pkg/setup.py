"""Setup script for regusolve."""

import subprocess
import sys
import os
from pathlib import Path


def install_requirements():
    """Install required Python packages."""
    print("📦 Installing Python dependencies...")
    try:
        subprocess.check_call([sys.executable, "-m", "pip", "install", "-r", "requirements.txt"])
        print("✅ Dependencies installed successfully")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Error installing dependencies: {e}")
        return False


def check_env_file():
    """Report REGUSOLVE_* overrides found in .env; the file itself is optional."""
    env_file = Path(".env")
    if not env_file.exists():
        print("ℹ️  No .env file: built-in defaults apply (override with REGUSOLVE_* variables)")
        return True

    overrides = []
    with open(env_file, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line.startswith("REGUSOLVE_") and "=" in line:
                overrides.append(line.split("=", 1)[0])

    try:
        from config.settings import Settings
        Settings()
    except Exception as e:
        print(f"❌ .env does not validate: {e}")
        return False

    print(f"✅ .env found with {len(overrides)} REGUSOLVE_* overrides")
    for key in overrides:
        print(f"   - {key}")
    return True


def create_directories():
    """Create the results and logs directories."""
    print("📁 Creating directories...")
    for directory in ["results", "logs"]:
        Path(directory).mkdir(exist_ok=True)
    print("✅ Directories created")
    return True


def main():
    """Main setup function."""
    print("🚀 regusolve Setup")
    print("=" * 50)

    project_dir = Path(__file__).parent
    os.chdir(project_dir)

    steps = [create_directories, install_requirements, check_env_file]
    success_steps = sum(1 for step in steps if step())

    print("\n" + "=" * 50)
    print(f"Setup completed: {success_steps}/{len(steps)} steps successful")

    if success_steps == len(steps):
        print("🎉 Setup completed successfully!")
        print("\nNext steps:")
        print("1. Check the installation: python test_installation.py")
        print("2. Run a benchmark: python main.py bench --problem shaw --n 200 --method rgsvd")
        print("3. Run the fast test suite: python test_runner.py fast")
    else:
        print("⚠️  Setup incomplete. Please address the issues above.")

    return success_steps == len(steps)


if __name__ == "__main__":
    main()
